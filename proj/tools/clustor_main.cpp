#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clustor/errors.hpp"
#include "clustor/experiment.hpp"

namespace {

int emit(const clustor::Dataset& ds, const std::string& format, const std::string& out_path) {
    const std::string text = clustor::render(ds, format);
    if (out_path.empty() || out_path == "-")
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        clustor::write_file(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clustor dynamics datasets: closed-form action/momentum/world-line "
                 "functions for one-dimensional conservative systems"};
    app.require_subcommand(1);

    std::string spec_path, out_path, format;
    std::vector<std::string> overrides;
    double tol = 0.0;
    int figure_id = 0;

    auto* run = app.add_subcommand("run", "run an experiment described by a spec file");
    run->add_option("spec", spec_path, "spec file (key = value with [sections])")->required();
    run->add_option("--set", overrides, "override, e.g. --set parameters.A=0.378")
        ->take_all();
    run->add_option("--out,-o", out_path, "output path (default stdout)");
    run->add_option("--format", format, "csv or json (overrides spec)");
    run->add_option("--tol", tol, "tolerance override");

    auto* fig = app.add_subcommand("figure", "emit the dataset behind a registry figure");
    fig->add_option("id", figure_id, "figure id (1..26)")->required();
    fig->add_option("--out,-o", out_path, "output path (default stdout)");
    fig->add_option("--format", format, "csv or json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            clustor::ExperimentSpec spec = clustor::parse_spec_file(spec_path);
            for (const auto& o : overrides) clustor::apply_override(spec, o);
            if (!format.empty()) spec.format = format;
            if (!out_path.empty()) spec.out_path = out_path;
            if (tol > 0.0) spec.tol = tol;
            clustor::validate_spec(spec);
            const clustor::Dataset ds = clustor::run_experiment(spec);
            return emit(ds, spec.format, spec.out_path);
        }
        if (fig->parsed()) {
            const clustor::Dataset ds = clustor::figure_dataset(figure_id);
            return emit(ds, format.empty() ? "csv" : format, out_path);
        }
    } catch (const clustor::InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const clustor::UnknownFigure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const clustor::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
