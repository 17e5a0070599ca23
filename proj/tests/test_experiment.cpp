#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bezsub/experiment.hpp"

using bezsub::AccuracyReport;
using bezsub::digits_of_accuracy;
using bezsub::ExperimentConfig;
using bezsub::generate_curves;
using bezsub::Method;
using bezsub::run_accuracy;
using bezsub::run_bench;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.degrees = {2, 3};
    config.curves_per_degree = 3;
    config.split_points = 5;
    config.seed = 42;
    return config;
}

} // namespace

TEST_CASE("digits of accuracy") {
    CHECK(digits_of_accuracy(1.0, 1.0) == 17.0);
    CHECK_THAT(digits_of_accuracy(1.0, 1.0 + 1e-10), Catch::Matchers::WithinAbs(10.0, 0.01));
    CHECK_THAT(digits_of_accuracy(2.0, 2.5), Catch::Matchers::WithinAbs(0.60206, 1e-4));
    CHECK(digits_of_accuracy(1.0, 2e6) == 0.0);
    CHECK(digits_of_accuracy(0.0, 0.0) == 17.0);
    // Absolute error when the reference is zero.
    CHECK_THAT(digits_of_accuracy(0.0, 1e-12), Catch::Matchers::WithinAbs(12.0, 1e-9));
    CHECK(digits_of_accuracy(1.0, std::nan("")) == 0.0);
    CHECK(digits_of_accuracy(1.0, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("curve generation") {
    ExperimentConfig config = small_config();
    config.curves_per_degree = 2;

    const auto a = generate_curves(config, 2);
    const auto b = generate_curves(config, 2);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);

    for (const auto& curve : a) {
        CHECK(curve.degree() == 2);
        CHECK(curve.dimension() == 2);
        for (double v : curve.coords()) {
            CHECK(v >= 1.0);
            CHECK(v <= 2.0);
        }
    }

    config.curves_per_degree = 0;
    CHECK(generate_curves(config, 2).empty());

    config.curves_per_degree = 1;
    config.seed = 43;
    const auto c = generate_curves(config, 2);
    CHECK(c[0] != a[0]);
}

TEST_CASE("accuracy run sanity") {
    ExperimentConfig config = small_config();
    const AccuracyReport report = run_accuracy(config);
    REQUIRE(report.rows.size() == 6); // 2 degrees x 3 methods

    for (const auto& row : report.rows) {
        CHECK(row.error_count == 0);
        CHECK(row.min_digits >= 0.0);
        CHECK(row.min_digits <= row.mean_digits + 1e-12);
        CHECK(row.mean_digits <= 17.0);
        if (row.method == Method::decasteljau) {
            // The reference against itself scores the cap everywhere.
            CHECK(row.min_digits == 17.0);
            CHECK(row.mean_digits == 17.0);
        } else {
            CHECK(row.min_digits > 13.0);
        }
    }
}

TEST_CASE("accuracy runs are deterministic") {
    const ExperimentConfig config = small_config();
    const AccuracyReport a = run_accuracy(config);
    const AccuracyReport b = run_accuracy(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].degree == b.rows[i].degree);
        CHECK(a.rows[i].method == b.rows[i].method);
        CHECK(a.rows[i].min_digits == b.rows[i].min_digits);
        CHECK(a.rows[i].mean_digits == b.rows[i].mean_digits);
        CHECK(a.rows[i].error_count == b.rows[i].error_count);
    }

    std::ostringstream csv_a, csv_b;
    write_accuracy_csv(a, csv_a);
    write_accuracy_csv(b, csv_b);
    CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("unscaled method degrades and is counted, not fatal") {
    ExperimentConfig config = small_config();
    config.degrees = {30};
    config.curves_per_degree = 2;
    config.split_points = 3;
    config.methods = {Method::unscaled};
    const AccuracyReport report = run_accuracy(config);
    REQUIRE(report.rows.size() == 1);
    // Whatever happens per case, the run completes with a full row.
    CHECK(report.rows[0].degree == 30);
}

TEST_CASE("csv schema") {
    const ExperimentConfig config = small_config();

    std::ostringstream acc;
    write_accuracy_csv(run_accuracy(config), acc);
    std::istringstream acc_in(acc.str());
    std::string header;
    std::getline(acc_in, header);
    CHECK(header == "degree,method,min_digits,mean_digits,error_count");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(acc_in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
        ++rows;
    }
    CHECK(rows == 6);

    ExperimentConfig bench_config = config;
    bench_config.curves_per_degree = 2;
    bench_config.split_points = 2;
    std::ostringstream bench;
    write_bench_csv(run_bench(bench_config), bench);
    std::istringstream bench_in(bench.str());
    std::getline(bench_in, header);
    CHECK(header == "degree,method,mode,total_seconds");
    rows = 0;
    while (std::getline(bench_in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 3);
        ++rows;
    }
    CHECK(rows == 12); // 2 degrees x 3 methods x 2 modes
}

TEST_CASE("bench markdown table") {
    ExperimentConfig config = small_config();
    config.curves_per_degree = 2;
    config.split_points = 2;
    std::ostringstream md;
    write_bench_markdown(run_bench(config), md);
    std::istringstream md_in(md.str());
    std::string header;
    std::getline(md_in, header);
    CHECK(header == "| n | decasteljau | fft | direct |");
    std::string sep;
    std::getline(md_in, sep);
    CHECK(sep == "|---|---|---|---|");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(md_in, line)) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("config validation") {
    ExperimentConfig config = small_config();
    config.degrees.clear();
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = small_config();
    config.dimension = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = small_config();
    config.coord_min = 3.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = small_config();
    config.split_points = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("default protocol shape") {
    const ExperimentConfig config;
    CHECK(config.degrees.size() == 27);
    CHECK(config.degrees.front() == 2);
    CHECK(config.degrees.back() == 70);
    CHECK(config.curves_per_degree == 1000);
    CHECK(config.split_points == 499);
    CHECK(config.dimension == 2);
    CHECK(config.scale_for(20) == 8.4);
    ExperimentConfig fixed = config;
    fixed.fixed_scale = 3.0;
    CHECK(fixed.scale_for(20) == 3.0);
}
