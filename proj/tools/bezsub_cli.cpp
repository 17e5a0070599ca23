// Command-line front end: subdivide curve/patch files, run the timing and
// accuracy protocols, and print endpoint derivatives.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bezsub/bezsub.hpp"

namespace {

struct CommonOptions {
    std::uint64_t seed = 1;
    std::optional<double> scale;
    std::string method = "fft";
    std::vector<std::size_t> degrees;
    std::size_t count = 1000;
    std::size_t splits = 499;
    std::size_t dim = 2;
    std::string format = "csv";
    std::string out_path;
};

bezsub::ExperimentConfig build_config(const CommonOptions& opts,
                                      const std::vector<std::string>& methods) {
    bezsub::ExperimentConfig config;
    if (!opts.degrees.empty()) config.degrees = opts.degrees;
    config.curves_per_degree = opts.count;
    config.split_points = opts.splits;
    config.dimension = opts.dim;
    config.seed = opts.seed;
    config.fixed_scale = opts.scale;
    if (!methods.empty()) {
        config.methods.clear();
        for (const std::string& m : methods) {
            config.methods.push_back(bezsub::parse_method(m));
        }
    }
    return config;
}

int write_report(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "cannot open output file: " << out_path << '\n';
        return bezsub::kExitNumericError;
    }
    os << text;
    return 0;
}

int run_subdivide(const CommonOptions& opts, const std::string& input, double c) {
    std::string message;
    const int status = bezsub::subdivide_file(input, c, opts.scale,
                                              bezsub::parse_method(opts.method),
                                              opts.out_path, &message);
    if (status != 0) std::cerr << "error: " << message << '\n';
    return status;
}

int run_surface_subdivide(const CommonOptions& opts, const std::string& input, double c,
                          const std::string& direction) {
    try {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "cannot open input file: " << input << '\n';
            return bezsub::kExitParseError;
        }
        std::string line;
        std::vector<bezsub::TensorPatch> patches;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            patches.push_back(bezsub::parse_patch_line(line));
        }
        if (patches.empty()) {
            std::cerr << "no patches in input file\n";
            return bezsub::kExitParseError;
        }

        std::string text;
        for (const bezsub::TensorPatch& patch : patches) {
            const bool along_u = direction == "v";
            const bezsub::TensorPatch oriented = along_u ? patch.transposed() : patch;
            const bezsub::SubdivisionPlan plan(oriented.row_degree(), c, opts.scale);
            bezsub::TensorPatch left = bezsub::subdivide_patch_left(plan, oriented);
            if (along_u) left = left.transposed();
            text += bezsub::format_patch_line(left) + '\n';
        }
        return write_report(text, opts.out_path);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return bezsub::kExitParseError;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return bezsub::kExitDomainError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return bezsub::kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bezsub::kExitNumericError;
    }
}

int run_derivatives(const CommonOptions& opts, const std::string& input) {
    try {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "cannot open input file: " << input << '\n';
            return bezsub::kExitParseError;
        }
        std::string text;
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const bezsub::CurveRecord record = bezsub::parse_curve_line(line);
            if (record.weights) {
                std::cerr << "derivatives are implemented for polynomial curves only\n";
                return bezsub::kExitDomainError;
            }
            for (const auto& [at, ders] :
                 {std::pair{0.0, bezsub::derivatives_at_zero(record.polygon)},
                  std::pair{1.0, bezsub::derivatives_at_one(record.polygon)}}) {
                nlohmann::json j;
                j["at"] = at;
                auto list = nlohmann::json::array();
                for (const bezsub::Point& p : ders) list.push_back(p);
                j["derivatives"] = std::move(list);
                text += j.dump() + '\n';
            }
        }
        if (text.empty()) {
            std::cerr << "no curves in input file\n";
            return bezsub::kExitParseError;
        }
        return write_report(text, opts.out_path);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return bezsub::kExitParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return bezsub::kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bezsub::kExitNumericError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fast Bezier curve and patch subdivision"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions opts;
    app.add_option("--seed", opts.seed, "random seed");
    app.add_option("--scale", opts.scale, "fixed scaling factor (default: 0.375 n + 0.9)");
    app.add_option("--method", opts.method, "decasteljau | fft | direct");
    app.add_option("--degrees", opts.degrees, "degrees to run")->delimiter(',');
    app.add_option("--count", opts.count, "curves per degree");
    app.add_option("--splits", opts.splits, "split points per curve (499 = full i/500 grid)");
    app.add_option("--dim", opts.dim, "curve dimension");
    app.add_option("--format", opts.format, "csv | md")
        ->check(CLI::IsMember({"csv", "md"}));
    app.add_option("--out", opts.out_path, "output path (default: stdout)");

    std::string input;
    double split_c = 0.5;
    std::string direction = "u";
    std::vector<std::string> method_list;

    auto* subdivide = app.add_subcommand("subdivide", "split curves from a file at c");
    subdivide->add_option("input", input, "curve file, one JSON object per line")->required();
    subdivide->add_option("--c", split_c, "split parameter in (0, 1)")->required();

    auto* bench = app.add_subcommand("bench", "time the methods on random curves");
    bench->add_option("--methods", method_list, "methods to time")->delimiter(',');

    auto* accuracy = app.add_subcommand("accuracy", "digits-of-accuracy statistics");
    accuracy->add_option("--methods", method_list, "methods to score")->delimiter(',');

    auto* derivatives = app.add_subcommand("derivatives", "endpoint derivatives of curves");
    derivatives->add_option("input", input, "curve file")->required();

    auto* surface = app.add_subcommand("surface-subdivide", "split patches from a file at c");
    surface->add_option("input", input, "patch file, one JSON object per line")->required();
    surface->add_option("--c", split_c, "split parameter in (0, 1)")->required();
    surface->add_option("--direction", direction, "t-direction (u) or u-direction (v)")
        ->check(CLI::IsMember({"u", "v"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (subdivide->parsed()) {
            return run_subdivide(opts, input, split_c);
        }
        if (bench->parsed()) {
            const bezsub::TimingReport report = bezsub::run_bench(build_config(opts, method_list));
            std::ostringstream os;
            if (opts.format == "md") {
                bezsub::write_bench_markdown(report, os);
            } else {
                bezsub::write_bench_csv(report, os);
            }
            return write_report(os.str(), opts.out_path);
        }
        if (accuracy->parsed()) {
            const bezsub::AccuracyReport report =
                bezsub::run_accuracy(build_config(opts, method_list));
            std::ostringstream os;
            bezsub::write_accuracy_csv(report, os);
            return write_report(os.str(), opts.out_path);
        }
        if (derivatives->parsed()) {
            return run_derivatives(opts, input);
        }
        if (surface->parsed()) {
            return run_surface_subdivide(opts, input, split_c, direction);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return bezsub::kExitDomainError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bezsub::kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bezsub::kExitNumericError;
    }
    return 0;
}
