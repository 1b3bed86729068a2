#pragma once

#include <string>

#include <json.hpp>

#include "entpot/moments.hpp"
#include "entpot/npt.hpp"
#include "entpot/states.hpp"

namespace entpot::cli {

using json = nlohmann::ordered_json;

std::string format_double(double x);  // %.17g, round-trips doubles

std::string to_string(ClassicalityVerdict v);
std::string to_string(DetectingKind k);
std::string to_string(NptVerdict v);
std::string to_string(NptMethod m);

struct AnalysisOptions {
    int max_order = -1;  // -1: default policy from the moment module
    double tol = 1e-10;
};

/// Parse a {"probs": [...], "tail_bound": n} document and validate it.
PhotonNumberDistribution load_pnd_file(const std::string& path);

/// input_spec echo for a family-generated distribution.
json family_echo(const FamilySpec& spec);

/// Full machine-readable report. Everything except the "timings" key is
/// deterministic for identical inputs.
json analyze(const PhotonNumberDistribution& pnd, const json& input_spec,
             const AnalysisOptions& opt);

/// Both theorem-consistency booleans of a report.
bool theorem_chains_ok(const json& report);

/// Lossy one-row summary (plus header) of an analysis report.
std::string csv_summary(const json& report, const std::string& label);

struct SweepOptions {
    FamilySpec base;
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    AnalysisOptions analysis;
    int jobs = 0;  // 0: machine parallelism
};

struct SweepResult {
    std::string csv;
    bool chains_ok = true;
};

/// Analyze every grid point (in parallel, rows emitted in grid order).
/// A failing point aborts the sweep with the offending value named.
SweepResult run_sweep(const SweepOptions& opt);

}  // namespace entpot::cli
