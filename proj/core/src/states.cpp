#include "entpot/states.hpp"

#include <cmath>
#include <stdexcept>

namespace entpot {

namespace {

constexpr int kNmaxCap = 4096;  // keeps downstream dense matrices bounded

double require_param(const FamilySpec& spec, const std::string& key) {
    auto it = spec.params.find(key);
    if (it == spec.params.end()) {
        throw BadFlag("family '" + to_string(spec.family) + "' needs parameter '" + key + "'");
    }
    return it->second;
}

int require_int_param(const FamilySpec& spec, const std::string& key) {
    const double v = require_param(spec, key);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) {
        throw Error("parameter '" + key + "' must be an integer, got " + std::to_string(v));
    }
    return static_cast<int>(r);
}

void check_tail_target(double tail_target) {
    if (!(tail_target > 0.0) || tail_target > 1e-6) {
        throw Error("tail_target must lie in (0, 1e-6]");
    }
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::fock: return "fock";
        case Family::poisson: return "poisson";
        case Family::thermal: return "thermal";
        case Family::binomial: return "binomial";
        case Family::vacuum_two_mixture: return "vacuum-two-mixture";
        case Family::mixture: return "mixture";
        case Family::file: return "file";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "fock") return Family::fock;
    if (name == "poisson") return Family::poisson;
    if (name == "thermal") return Family::thermal;
    if (name == "binomial") return Family::binomial;
    if (name == "vacuum-two-mixture") return Family::vacuum_two_mixture;
    if (name == "mixture") return Family::mixture;
    if (name == "file") return Family::file;
    throw BadFlag("unknown family '" + name + "'");
}

PhotonNumberDistribution make_fock(int m) {
    if (m < 0) throw Error("make_fock: m must be >= 0");
    if (m > kNmaxCap) throw Error("make_fock: m exceeds the n_max cap of 4096");
    std::vector<double> probs(std::max(m, 1) + 1, 0.0);
    probs[m] = 1.0;
    return validate_pnd(probs, 0.0);
}

PhotonNumberDistribution make_poisson(double mu, double tail_target) {
    if (!(mu >= 0.0)) throw Error("make_poisson: mu must be >= 0");
    check_tail_target(tail_target);
    if (mu == 0.0) return validate_pnd({1.0}, 0.0);

    const double log_mu = std::log(mu);
    auto term = [&](int n) { return std::exp(-mu + n * log_mu - std::lgamma(n + 1.0)); };

    std::vector<double> probs;
    for (int n = 0; n <= kNmaxCap; ++n) {
        probs.push_back(term(n));
        // Remainder past n is bounded by the next term times a geometric
        // series in the term ratio mu/(n+2).
        if (n + 2 > mu) {
            const double bound = term(n + 1) / (1.0 - mu / (n + 2));
            if (bound < tail_target) {
                return validate_pnd(probs, bound);
            }
        }
    }
    throw TailNotReachable("make_poisson: tail target " + std::to_string(tail_target) +
                           " not reached within n_max <= 4096 (mu = " + std::to_string(mu) + ")");
}

PhotonNumberDistribution make_thermal(double nbar, double tail_target) {
    if (!(nbar >= 0.0)) throw Error("make_thermal: nbar must be >= 0");
    check_tail_target(tail_target);
    if (nbar == 0.0) return validate_pnd({1.0}, 0.0);

    const double ratio = nbar / (1.0 + nbar);
    std::vector<double> probs;
    double tail = 1.0;  // mass beyond n-1 is ratio^n exactly
    for (int n = 0; n <= kNmaxCap; ++n) {
        probs.push_back(std::pow(ratio, n) / (1.0 + nbar));
        tail *= ratio;
        if (tail < tail_target) {
            return validate_pnd(probs, tail);
        }
    }
    throw TailNotReachable("make_thermal: tail target " + std::to_string(tail_target) +
                           " not reached within n_max <= 4096 (nbar = " + std::to_string(nbar) + ")");
}

PhotonNumberDistribution make_binomial(int trials, double eta) {
    if (trials < 1) throw Error("make_binomial: M must be >= 1");
    if (trials > kNmaxCap) throw Error("make_binomial: M exceeds the n_max cap of 4096");
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error("make_binomial: eta must lie in [0, 1]");

    std::vector<double> probs(trials + 1, 0.0);
    if (eta == 0.0) {
        probs[0] = 1.0;
    } else if (eta == 1.0) {
        probs[trials] = 1.0;
    } else if (trials <= 50) {
        // binomial coefficients are exact doubles in this range
        double c = 1.0;
        for (int n = 0; n <= trials; ++n) {
            probs[n] = c * std::pow(eta, n) * std::pow(1.0 - eta, trials - n);
            c = c * (trials - n) / (n + 1.0);
        }
    } else {
        for (int n = 0; n <= trials; ++n) {
            const double log_c = std::lgamma(trials + 1.0) - std::lgamma(n + 1.0) -
                                 std::lgamma(trials - n + 1.0);
            probs[n] = std::exp(log_c + n * std::log(eta) + (trials - n) * std::log1p(-eta));
        }
    }
    return validate_pnd(probs, 0.0);
}

PhotonNumberDistribution make_vacuum_two_mixture(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error("make_vacuum_two_mixture: lambda must lie in [0, 1]");
    }
    return validate_pnd({1.0 - lambda, 0.0, lambda}, 0.0);
}

PhotonNumberDistribution make_mixture(const std::vector<PhotonNumberDistribution>& components,
                                      const std::vector<double>& weights) {
    if (components.empty()) throw EmptyInput("make_mixture: no components");
    if (components.size() != weights.size()) {
        throw WeightMismatch("make_mixture: " + std::to_string(components.size()) +
                             " components vs " + std::to_string(weights.size()) + " weights");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw WeightMismatch("make_mixture: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw WeightMismatch("make_mixture: weights sum to " + std::to_string(wsum));
    }

    int n_max = 1;
    double tail = 0.0;
    for (const auto& c : components) n_max = std::max(n_max, c.n_max);
    std::vector<double> probs(n_max + 1, 0.0);
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (int n = 0; n <= components[i].n_max; ++n) {
            probs[n] += weights[i] * components[i].probs[n];
        }
        tail += weights[i] * components[i].tail_bound;
    }
    return validate_pnd(probs, tail);
}

PhotonNumberDistribution make_family(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::fock:
            return make_fock(require_int_param(spec, "m"));
        case Family::poisson:
            return make_poisson(require_param(spec, "mu"), spec.tail_target);
        case Family::thermal:
            return make_thermal(require_param(spec, "nbar"), spec.tail_target);
        case Family::binomial:
            return make_binomial(require_int_param(spec, "M"), require_param(spec, "eta"));
        case Family::vacuum_two_mixture:
            return make_vacuum_two_mixture(require_param(spec, "lambda"));
        case Family::mixture: {
            std::vector<PhotonNumberDistribution> comps;
            std::vector<double> weights;
            for (int i = 0; i < 5; ++i) {
                const std::string wk = "w" + std::to_string(i);
                const std::string mk = "mu" + std::to_string(i);
                const bool has_w = spec.params.count(wk) > 0;
                const bool has_mu = spec.params.count(mk) > 0;
                if (has_w != has_mu) {
                    throw BadFlag("mixture component " + std::to_string(i) +
                                  " needs both '" + wk + "' and '" + mk + "'");
                }
                if (!has_w) continue;
                weights.push_back(spec.params.at(wk));
                comps.push_back(make_poisson(spec.params.at(mk), spec.tail_target));
            }
            if (comps.empty()) {
                throw BadFlag("mixture family needs at least one component (w0=..., mu0=...)");
            }
            return make_mixture(comps, weights);
        }
        case Family::file:
            throw BadFlag("file-based distributions are loaded via --pnd-file");
    }
    throw BadFlag("unhandled family");
}

}  // namespace entpot
