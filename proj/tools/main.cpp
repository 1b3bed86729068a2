// entpot: certify NPT entanglement of a 50:50 beam splitter output from the
// photon number distribution of the input mode.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

namespace {

using entpot::cli::json;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInternal = 4;

std::pair<std::string, double> parse_key_value(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw entpot::BadFlag("expected key=value, got '" + arg + "'");
    }
    try {
        std::size_t used = 0;
        const double value = std::stod(arg.substr(eq + 1), &used);
        if (used != arg.size() - eq - 1) throw std::invalid_argument(arg);
        return {arg.substr(0, eq), value};
    } catch (const std::exception&) {
        throw entpot::BadFlag("cannot parse numeric value in '" + arg + "'");
    }
}

struct SweepRange {
    std::string param;
    double start = 0.0, stop = 0.0, step = 0.0;
};

SweepRange parse_sweep(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw entpot::BadFlag("expected param=start:stop:step, got '" + arg + "'");
    }
    SweepRange r;
    r.param = arg.substr(0, eq);
    const std::string range = arg.substr(eq + 1);
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &r.start, &r.stop, &r.step) != 3) {
        throw entpot::BadFlag("cannot parse sweep range '" + range + "'");
    }
    return r;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw entpot::Error("cannot write to '" + out_path + "'");
    out << text;
}

struct CommonArgs {
    std::string family;
    std::vector<std::string> params;
    std::string pnd_file;
    double tail = 1e-12;
    int orders = -1;
    double tol = 1e-10;
    std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--family", args.family,
                    "distribution family: fock | poisson | thermal | binomial | "
                    "vacuum-two-mixture | mixture");
    cmd->add_option("--param", args.params, "family parameter, key=value (repeatable)");
    cmd->add_option("--tail", args.tail, "tail target for infinite families")
        ->capture_default_str();
    cmd->add_option("--orders", args.orders,
                    "largest matrix order tested (default: (n_max-1)/2 capped at 20)");
    cmd->add_option("--tol", args.tol, "negativity tolerance")->capture_default_str();
    cmd->add_option("--out", args.out, "write output to this path instead of stdout");
}

entpot::FamilySpec build_spec(const CommonArgs& args) {
    entpot::FamilySpec spec;
    spec.family = entpot::family_from_string(args.family);
    spec.tail_target = args.tail;
    for (const auto& p : args.params) {
        const auto [key, value] = parse_key_value(p);
        spec.params[key] = value;
    }
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{"NPT entanglement certification for beam-split photon statistics"};
    app.require_subcommand(1);

    CommonArgs analyze_args;
    std::string format = "json";
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "analyze one distribution");
    add_common(analyze_cmd, analyze_args);
    analyze_cmd->add_option("--pnd-file", analyze_args.pnd_file,
                            "JSON file {\"probs\": [...], \"tail_bound\": t}");
    analyze_cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv-summary"}))
        ->capture_default_str();

    CommonArgs sweep_args;
    std::string sweep_expr;
    int jobs = 0;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep one family parameter");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--sweep", sweep_expr, "grid, param=start:stop:step")->required();
    sweep_cmd->add_option("--jobs", jobs, "worker threads (default: machine parallelism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (analyze_cmd->parsed()) {
        const bool has_family = !analyze_args.family.empty();
        const bool has_file = !analyze_args.pnd_file.empty();
        if (has_family == has_file) {
            std::cerr << "analyze needs exactly one of --family or --pnd-file\n";
            return kExitUsage;
        }

        entpot::PhotonNumberDistribution pnd;
        json echo;
        if (has_file) {
            pnd = entpot::cli::load_pnd_file(analyze_args.pnd_file);
            echo["pnd_file"] = analyze_args.pnd_file;
        } else {
            const entpot::FamilySpec spec = build_spec(analyze_args);
            pnd = entpot::make_family(spec);
            echo = entpot::cli::family_echo(spec);
        }

        entpot::cli::AnalysisOptions opt{analyze_args.orders, analyze_args.tol};
        const json report = entpot::cli::analyze(pnd, echo, opt);
        if (format == "json") {
            emit(report.dump(2) + "\n", analyze_args.out);
        } else {
            const std::string label =
                has_file ? "file:" + analyze_args.pnd_file : "family:" + analyze_args.family;
            emit(entpot::cli::csv_summary(report, label), analyze_args.out);
        }
        if (!entpot::cli::theorem_chains_ok(report)) {
            std::cerr << "internal consistency failure: a theorem chain is violated\n";
            return kExitInternal;
        }
        return 0;
    }

    // sweep
    if (sweep_args.family.empty()) {
        std::cerr << "sweep needs --family\n";
        return kExitUsage;
    }
    const SweepRange range = parse_sweep(sweep_expr);
    entpot::cli::SweepOptions opt;
    opt.base = build_spec(sweep_args);
    opt.param = range.param;
    opt.start = range.start;
    opt.stop = range.stop;
    opt.step = range.step;
    opt.analysis = {sweep_args.orders, sweep_args.tol};
    opt.jobs = jobs;

    const entpot::cli::SweepResult result = entpot::cli::run_sweep(opt);
    emit(result.csv, sweep_args.out);
    if (!result.chains_ok) {
        std::cerr << "internal consistency failure: a theorem chain is violated\n";
        return kExitInternal;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const entpot::BadFlag& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const entpot::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
