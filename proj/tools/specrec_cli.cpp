#include "specrec.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using specrec::Json;

int emit(const Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

// A path, or the name of a bundled curve when no such file exists.
specrec::SpectralCurve resolve_curve(const std::string& arg) {
    if (!std::filesystem::exists(arg))
        if (auto c = specrec::corpus_curve(arg)) return *c;
    return specrec::load_curve(arg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological recursion on rational spectral curves and the x-y swap check"};
    app.require_subcommand(1);

    specrec::ComputeOptions opt;
    std::string curve_arg, out_path;

    auto* compute = app.add_subcommand("compute", "correlators and invariants of one curve");
    compute->add_option("--curve", curve_arg, "curve file (JSON), or a bundled curve name")->required();
    compute->add_option("--gmax", opt.gmax, "largest genus")->required()->check(CLI::Range(0, 12));
    compute->add_option("--nmax", opt.nmax, "largest number of points in the correlator listing")->check(CLI::Range(1, 8));
    compute->add_flag("--check-symmetry", opt.check_symmetry, "compare with the swapped curve (needs gmax >= 2)");
    compute->add_flag("--verify-stability", opt.engine.verify_stability, "recompute every correlator at a deeper truncation");
    compute->add_option("--guard", opt.engine.guard, "extra series depth")->check(CLI::Range(0, 64));
    compute->add_option("--out", out_path, "report path (default: stdout)");

    auto* corpus = app.add_subcommand("corpus", "bundled curves");
    corpus->require_subcommand(1);
    auto* list = corpus->add_subcommand("list", "list bundled curves and their validation status");
    std::string show_name;
    auto* show = corpus->add_subcommand("show", "print a bundled curve as a curve file");
    show->add_option("name", show_name)->required();
    int run_gmax = 2;
    auto* run = corpus->add_subcommand("run", "swap comparison for every bundled curve");
    run->add_option("--gmax", run_gmax, "largest genus")->required()->check(CLI::Range(2, 12));
    run->add_flag("--verify-stability", opt.engine.verify_stability, "recompute every correlator at a deeper truncation");
    run->add_option("--out", out_path, "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return specrec::kExitInvalidInput;
    }

    if (*compute) {
        if (opt.check_symmetry && opt.gmax < 2) {
            std::cerr << "--check-symmetry needs --gmax >= 2\n";
            return specrec::kExitInvalidInput;
        }
        std::optional<specrec::SpectralCurve> curve;
        try {
            curve = resolve_curve(curve_arg);
        } catch (const specrec::CurveFileError& e) {
            emit(specrec::input_error_report(e.what(), e.field()), out_path);
            std::cerr << e.what() << "\n";
            return specrec::kExitInvalidInput;
        } catch (const std::exception& e) {
            emit(specrec::input_error_report(e.what()), out_path);
            std::cerr << e.what() << "\n";
            return specrec::kExitInvalidInput;
        }
        const auto result = specrec::run_compute(*curve, opt);
        if (emit(result.report, out_path) != 0) return specrec::kExitInvalidInput;
        return result.exit_code;
    }

    if (*list) {
        for (const auto& c : specrec::corpus()) {
            for (const auto& side : {c, specrec::swap(c)}) {
                const auto v = specrec::validate_regular(side);
                std::cout << side.name << "\tx = " << specrec::to_string(side.x) << "\ty = " << specrec::to_string(side.y) << "\t"
                          << (v.passed() ? "regular" : "not regular");
                for (const auto& n : v.notes) std::cout << " (" << n.code << ")";
                for (const auto& f : v.failures) std::cout << " [" << f.code << "]";
                std::cout << "\n";
            }
        }
        return 0;
    }

    if (*show) {
        auto c = specrec::corpus_curve(show_name);
        if (!c) {
            std::cerr << "no bundled curve named " << show_name << "\n";
            return specrec::kExitInvalidInput;
        }
        std::cout << specrec::serialize_curve(*c);
        return 0;
    }

    if (*run) {
        opt.gmax = run_gmax;
        opt.nmax = 1;
        opt.check_symmetry = true;
        Json all;
        all["schema"] = specrec::kReportSchema;
        all["reports"] = Json::array();
        int code = specrec::kExitOk;
        for (const auto& c : specrec::corpus()) {
            auto result = specrec::run_compute(c, opt);
            std::cerr << c.name << ": " << result.report["status"].get<std::string>() << "\n";
            code = std::max(code, result.exit_code);
            all["reports"].push_back(std::move(result.report));
        }
        if (emit(all, out_path) != 0) return specrec::kExitInvalidInput;
        return code;
    }
    return 0;
}
