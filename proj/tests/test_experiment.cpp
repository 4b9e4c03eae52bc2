#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "clustor/errors.hpp"
#include "clustor/experiment.hpp"

using namespace clustor;

namespace {

ExperimentSpec spec_from_lines(const std::string& text) {
    const std::string path = "/tmp/clustor_test_spec.cfg";
    std::ofstream f(path, std::ios::trunc);
    f << text;
    f.close();
    return parse_spec_file(path);
}

}  // namespace

TEST_CASE("spec files parse and validate") {
    const ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = free\n"
        "type = dynamics_grid\n"
        "\n"
        "[parameters]\n"
        "A = 0.378\n"
        "\n"
        "[grid]\n"
        "from = 0\n"
        "to = 2\n"
        "n = 41\n"
        "\n"
        "[output]\n"
        "format = csv\n");
    validate_spec(spec);
    CHECK(spec.system == "free");
    CHECK(spec.params.at("A") == doctest::Approx(0.378));
    CHECK(spec.grid_n == 41);
}

TEST_CASE("unknown keys are rejected by name") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = free\n"
        "type = activation\n");
    CHECK_THROWS_AS(apply_override(spec, "parameters.bogus=1;"), InvalidConfig);
    apply_override(spec, "parameters.bogus=1");
    CHECK_THROWS_WITH_AS(validate_spec(spec),
                         "cli: InvalidConfig: unknown parameter 'bogus' for system 'free'",
                         InvalidConfig);
    ExperimentSpec bad = spec_from_lines(
        "[experiment]\n"
        "system = trampoline\n"
        "type = activation\n");
    CHECK_THROWS_AS(validate_spec(bad), InvalidConfig);
}

TEST_CASE("overrides replace file values") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = free\n"
        "type = activation\n"
        "\n"
        "[parameters]\n"
        "A = 1\n");
    apply_override(spec, "parameters.A=0.378");
    const Dataset ds = run_experiment(spec);
    CHECK(ds.rows.at(0).at(0) == doctest::Approx(0.75).epsilon(2e-4));
}

TEST_CASE("Newtonian free dynamics grid is the three Newtonian lines") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = free\n"
        "type = dynamics_grid\n"
        "\n"
        "[grid]\n"
        "from = 0\n"
        "to = 3\n"
        "n = 31\n");
    const Dataset ds = run_experiment(spec);
    REQUIRE(ds.rows.size() == 3 * 31);
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        const double xl = ds.rows[i][0];
        const double v = ds.rows[i][1];
        if (ds.series[i] == "action") CHECK(v == doctest::Approx(xl).epsilon(1e-12));
        if (ds.series[i] == "momentum") CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        if (ds.series[i] == "time")
            CHECK(v == doctest::Approx(2.0 * M_PI * xl).epsilon(1e-12));
    }
}

TEST_CASE("datasets are byte-identical across runs") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = oscillator\n"
        "type = dynamics_grid\n"
        "\n"
        "[parameters]\n"
        "eta = 3\n"
        "a = 0.5\n"
        "\n"
        "[grid]\n"
        "from = -3\n"
        "to = 3\n"
        "n = 201\n");
    const std::string a = render(run_experiment(spec), "csv");
    const std::string b = render(run_experiment(spec), "csv");
    CHECK(a == b);
    const std::string ja = render(run_experiment(spec), "json");
    const std::string jb = render(run_experiment(spec), "json");
    CHECK(ja == jb);
}

TEST_CASE("CSV round-trip recovers every value exactly") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = free\n"
        "type = dynamics_grid\n"
        "\n"
        "[parameters]\n"
        "A = 0.378\n"
        "B = 0.1\n"
        "C = 1.25\n"
        "\n"
        "[grid]\n"
        "from = -1.3\n"
        "to = 2.7\n"
        "n = 57\n");
    const Dataset ds = run_experiment(spec);
    const Dataset back = read_csv(to_csv(ds));
    REQUIRE(back.rows.size() == ds.rows.size());
    REQUIRE(back.columns == ds.columns);
    CHECK(back.series == ds.series);
    for (std::size_t i = 0; i < ds.rows.size(); ++i)
        for (std::size_t j = 0; j < ds.rows[i].size(); ++j)
            CHECK(back.rows[i][j] == ds.rows[i][j]);  // exact, not approximate
}

TEST_CASE("snapshot experiment reproduces the five-point anchor") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = free\n"
        "type = snapshot\n"
        "\n"
        "[parameters]\n"
        "A = 0.378\n"
        "t_star = 4.5\n");
    const Dataset ds = run_experiment(spec);
    CHECK(ds.rows.size() == 5);
    double mass_sum = 0.0;
    for (const auto& row : ds.rows) mass_sum += row[2];
    CHECK(mass_sum == doctest::Approx(1.0));
}

TEST_CASE("figure registry ids outside 1..26 are rejected") {
    CHECK(figure_count() == 26);
    CHECK_THROWS_AS(figure_dataset(0), UnknownFigure);
    CHECK_THROWS_AS(figure_dataset(27), UnknownFigure);
}

TEST_CASE("figure 1 is the catan staircase against the principal branch") {
    const Dataset ds = figure_dataset(1);
    // the cumulative series ends near 4 pi x the squash factor's mean slope;
    // at x = 4 pi the cumulative angle is 4 pi
    double last_cumulative = 0.0;
    for (std::size_t i = 0; i < ds.rows.size(); ++i)
        if (ds.series[i] == "cumulative") last_cumulative = ds.rows[i][1];
    CHECK(last_cumulative == doctest::Approx(4.0 * M_PI).epsilon(1e-9));
    // the principal branch stays within (-pi/2, pi/2)
    for (std::size_t i = 0; i < ds.rows.size(); ++i)
        if (ds.series[i] == "principal") CHECK(std::abs(ds.rows[i][1]) <= M_PI / 2.0 + 1e-12);
}

TEST_CASE("figure 5 carries exactly five clustor points") {
    const Dataset ds = figure_dataset(5);
    int points = 0, pos = 0;
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        if (ds.series[i] == "point_pos") {
            ++points;
            ++pos;
        } else if (ds.series[i] == "point_neg") {
            ++points;
        }
    }
    CHECK(points == 5);
    CHECK(pos == 3);
}

TEST_CASE("barrier activation experiment emits the transmitted parameters") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = barrier\n"
        "type = activation\n"
        "\n"
        "[parameters]\n"
        "V_over_E = 0.99\n"
        "x1 = 12.566370614359172\n"
        "x2 = 18.849555921538759\n");
    const Dataset ds = run_experiment(spec);
    CHECK(ds.rows.at(0).at(0) == doctest::Approx(0.998).epsilon(1e-3));
}

TEST_CASE("numerical failures carry the module and variant") {
    ExperimentSpec spec = spec_from_lines(
        "[experiment]\n"
        "system = oscillator\n"
        "type = dynamics_grid\n"
        "\n"
        "[parameters]\n"
        "eta = 2\n"
        "\n"
        "[grid]\n"
        "from = 0\n"
        "to = 40\n"
        "n = 11\n");
    try {
        run_experiment(spec);
        FAIL("expected SeriesOverflow");
    } catch (const SeriesOverflow& e) {
        // the guard that trips first names its module (the series itself at
        // this argument, the outer range guard beyond it)
        CHECK(std::string(e.what()).find("SeriesOverflow") != std::string::npos);
        CHECK(e.module != "");
    }
}
