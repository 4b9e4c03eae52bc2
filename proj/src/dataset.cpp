#include "clustor/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clustor/errors.hpp"

namespace clustor {

void Dataset::add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void Dataset::add_meta(const std::string& key, double value) {
    metadata.emplace_back(key, format_double(value));
}

void Dataset::add_row(const std::vector<double>& row) { rows.push_back(row); }

void Dataset::add_row(const std::string& series_tag, const std::vector<double>& row) {
    series.push_back(series_tag);
    rows.push_back(row);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const Dataset& ds) {
    std::ostringstream out;
    for (const auto& [k, v] : ds.metadata) out << "# " << k << " = " << v << "\n";
    bool first = true;
    if (!ds.series_name.empty()) {
        out << ds.series_name;
        first = false;
    }
    for (const auto& c : ds.columns) {
        if (!first) out << ",";
        out << c;
        first = false;
    }
    out << "\n";
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        bool f = true;
        if (!ds.series_name.empty()) {
            out << (i < ds.series.size() ? ds.series[i] : "");
            f = false;
        }
        for (double v : ds.rows[i]) {
            if (!f) out << ",";
            out << format_double(v);
            f = false;
        }
        out << "\n";
    }
    return out.str();
}

std::string to_json(const Dataset& ds) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ds.metadata) meta[k] = v;
    j["metadata"] = meta;
    j["columns"] = ds.columns;
    if (!ds.series_name.empty()) {
        j["series_name"] = ds.series_name;
        j["series"] = ds.series;
    }
    nlohmann::ordered_json data = nlohmann::ordered_json::array();
    for (const auto& row : ds.rows) data.push_back(row);
    j["data"] = data;
    return j.dump(2) + "\n";
}

Dataset read_csv(const std::string& text) {
    Dataset ds;
    std::istringstream in(text);
    std::string line;
    bool header_done = false;
    bool has_series = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(2, eq - 3);
                std::string val = line.substr(eq + 2);
                ds.metadata.emplace_back(key, val);
            }
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header_done) {
            header_done = true;
            ds.columns = cells;
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        if (!has_series && !cells.empty()) {
            char* end = nullptr;
            std::strtod(cells[0].c_str(), &end);
            if (end == cells[0].c_str() && ds.series_name.empty() && ds.rows.empty()) {
                has_series = true;
                ds.series_name = ds.columns.front();
                ds.columns.erase(ds.columns.begin());
            }
        }
        if (has_series) {
            ds.series.push_back(cells[0]);
            start = 1;
        }
        for (std::size_t i = start; i < cells.size(); ++i)
            row.push_back(std::strtod(cells[i].c_str(), nullptr));
        ds.rows.push_back(row);
    }
    return ds;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidConfig("cli", "cannot open output file: " + path);
    f << content;
}

}  // namespace clustor
