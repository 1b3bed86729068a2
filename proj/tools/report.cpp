#include "report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace entpot::cli {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

json number_or_null(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

json order_or_null(int order) {
    if (order < 0) return nullptr;
    return order;
}

std::string csv_row(const json& report) {
    const auto& summary = report["pnd_summary"];
    const auto& cls = report["classicality"];
    const auto& npt = report["npt"];
    std::ostringstream row;
    row << format_double(summary["mean"].get<double>()) << ','
        << format_double(summary["antibunching_value"].get<double>()) << ','
        << (cls["verdict"].get<std::string>() == "nonclassical" ? "false" : "true") << ','
        << cls["detecting_kind"].get<std::string>() << ','
        << (cls["detecting_order"].is_null()
                ? std::string()
                : std::to_string(cls["detecting_order"].get<int>())) << ','
        << format_double(npt["min_pt_eigenvalue"].get<double>()) << ','
        << format_double(npt["log_negativity"].get<double>());
    return row.str();
}

constexpr const char* kCsvColumns =
    "mean,antibunching_value,classical,detecting_kind,detecting_order,"
    "min_pt_eigenvalue,log_negativity";

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string to_string(ClassicalityVerdict v) {
    return v == ClassicalityVerdict::nonclassical ? "nonclassical" : "classical_up_to_order";
}

std::string to_string(DetectingKind k) {
    switch (k) {
        case DetectingKind::L: return "L";
        case DetectingKind::L_tilde: return "L_tilde";
        case DetectingKind::none: return "none";
    }
    return "?";
}

std::string to_string(NptVerdict v) {
    return v == NptVerdict::npt ? "npt" : "no_detection";
}

std::string to_string(NptMethod m) {
    switch (m) {
        case NptMethod::witness_2x2: return "witness_2x2";
        case NptMethod::submatrix_H: return "submatrix_H";
        case NptMethod::submatrix_H_tilde: return "submatrix_H_tilde";
        case NptMethod::full_spectrum: return "full_spectrum";
    }
    return "?";
}

PhotonNumberDistribution load_pnd_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    if (!doc.is_object() || !doc.contains("probs") || !doc["probs"].is_array()) {
        throw ParseError("'" + path + "': expected an object with a \"probs\" array");
    }
    std::vector<double> probs;
    for (const auto& v : doc["probs"]) {
        if (!v.is_number()) throw ParseError("'" + path + "': \"probs\" must hold numbers");
        probs.push_back(v.get<double>());
    }
    double tail_bound = 0.0;
    if (doc.contains("tail_bound")) {
        if (!doc["tail_bound"].is_number()) {
            throw ParseError("'" + path + "': \"tail_bound\" must be a number");
        }
        tail_bound = doc["tail_bound"].get<double>();
    }
    return validate_pnd(probs, tail_bound);
}

json family_echo(const FamilySpec& spec) {
    json echo;
    echo["family"] = to_string(spec.family);
    json params = json::object();
    for (const auto& [key, value] : spec.params) params[key] = value;
    echo["params"] = params;
    echo["tail_target"] = spec.tail_target;
    return echo;
}

json analyze(const PhotonNumberDistribution& pnd, const json& input_spec,
             const AnalysisOptions& opt) {
    const auto t_start = std::chrono::steady_clock::now();
    const int max_order = opt.max_order > 0 ? opt.max_order : default_max_order(pnd);

    const MandelStatistics st = mandel_statistics(pnd);

    const auto t_cls = std::chrono::steady_clock::now();
    const ClassicalityCertificate cls = classicality_check(pnd, max_order, opt.tol);
    const double cls_ms = elapsed_ms(t_cls);

    const auto t_npt = std::chrono::steady_clock::now();
    const NPTCertificate npt = npt_certificate(pnd, max_order, opt.tol);
    const double npt_ms = elapsed_ms(t_npt);

    const bool is_npt = npt.verdict == NptVerdict::npt;
    const bool thm1_ok = st.antibunching_value >= -opt.tol || is_npt;
    const bool thm2_ok = cls.verdict == ClassicalityVerdict::classical_up_to_order || is_npt;

    json report;
    report["schema_version"] = 1;
    report["input_spec"] = input_spec;
    report["pnd_summary"] = {
        {"n_max", pnd.n_max},
        {"tail_bound", pnd.tail_bound},
        {"mean", st.mean},
        {"antibunching_value", st.antibunching_value},
        {"mandel_q", number_or_null(st.mandel_q)},
    };
    report["classicality"] = {
        {"verdict", to_string(cls.verdict)},
        {"detecting_kind", to_string(cls.detecting_kind)},
        {"detecting_order", order_or_null(cls.detecting_order)},
        {"min_eigenvalue", cls.min_eigenvalue},
        {"max_order_tested", cls.max_order_tested},
    };
    report["npt"] = {
        {"verdict", to_string(npt.verdict)},
        {"method", to_string(npt.method)},
        {"detecting_order", order_or_null(npt.detecting_order)},
        {"min_pt_eigenvalue", npt.min_pt_eigenvalue},
        {"log_negativity", npt.log_negativity},
    };
    report["theorem_consistency"] = {
        {"thm1_chain_ok", thm1_ok},
        {"thm2_chain_ok", thm2_ok},
    };
    report["timings"] = {
        {"classicality_ms", cls_ms},
        {"npt_ms", npt_ms},
        {"total_ms", elapsed_ms(t_start)},
    };
    return report;
}

bool theorem_chains_ok(const json& report) {
    const auto& tc = report["theorem_consistency"];
    return tc["thm1_chain_ok"].get<bool>() && tc["thm2_chain_ok"].get<bool>();
}

std::string csv_summary(const json& report, const std::string& label) {
    std::ostringstream out;
    out << "input," << kCsvColumns << '\n' << label << ',' << csv_row(report) << '\n';
    return out.str();
}

SweepResult run_sweep(const SweepOptions& opt) {
    if (!(opt.step > 0.0)) throw Error("sweep: step must be > 0");
    if (opt.stop < opt.start) throw EmptyGrid("sweep: empty grid (stop < start)");
    const int count = static_cast<int>(std::floor((opt.stop - opt.start) / opt.step + 1e-9)) + 1;
    if (count < 1) throw EmptyGrid("sweep: empty grid");

    std::vector<std::string> rows(count);
    std::atomic<int> next{0};
    std::atomic<bool> all_chains_ok{true};
    std::mutex error_mutex;
    int error_index = count;
    std::string error_message;
    bool error_is_usage = false;

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            const double value = opt.start + i * opt.step;
            try {
                FamilySpec spec = opt.base;
                spec.params[opt.param] = value;
                const PhotonNumberDistribution pnd = make_family(spec);
                const json report = analyze(pnd, family_echo(spec), opt.analysis);
                if (!theorem_chains_ok(report)) all_chains_ok = false;
                rows[i] = format_double(value) + "," + csv_row(report);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error_message = "sweep aborted at " + opt.param + "=" +
                                    format_double(value) + ": " + e.what();
                    error_is_usage = dynamic_cast<const BadFlag*>(&e) != nullptr;
                }
            }
        }
    };

    int jobs = opt.jobs > 0 ? opt.jobs
                            : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp(jobs, 1, count);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (error_index < count) {
        if (error_is_usage) throw BadFlag(error_message);
        throw Error(error_message);
    }

    SweepResult result;
    result.chains_ok = all_chains_ok;
    std::ostringstream out;
    out << opt.param << ',' << kCsvColumns << '\n';
    for (const auto& row : rows) out << row << '\n';
    result.csv = out.str();
    return result;
}

}  // namespace entpot::cli
