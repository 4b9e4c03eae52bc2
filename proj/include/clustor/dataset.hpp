#pragma once

#include <string>
#include <utility>
#include <vector>

namespace clustor {

// Columnar numeric dataset with an optional leading string column ("series")
// and an ordered metadata block.  Serialization is deterministic: identical
// datasets produce identical bytes, and numeric cells round-trip exactly
// (17 significant digits).
struct Dataset {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::string series_name;                 // empty: no series column
    std::vector<std::string> columns;
    std::vector<std::string> series;         // parallel to rows when series_name set
    std::vector<std::vector<double>> rows;

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
    void add_row(const std::vector<double>& row);
    void add_row(const std::string& series_tag, const std::vector<double>& row);
};

std::string to_csv(const Dataset& ds);
std::string to_json(const Dataset& ds);

// strict CSV reader for the round-trip checks: returns columns and rows,
// skipping '#' metadata lines
Dataset read_csv(const std::string& text);

std::string format_double(double v);  // %.17g

void write_file(const std::string& path, const std::string& content);

}  // namespace clustor
