#include "entpot/fock.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

namespace entpot {

namespace {

constexpr double kNegativeDust = -1e-15;  // clamp window for float noise
constexpr double kMassSlack = 1e-12;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

double PhotonNumberDistribution::mass() const {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

PhotonNumberDistribution validate_pnd(const std::vector<double>& raw_probs,
                                      double tail_bound) {
    if (raw_probs.empty()) {
        throw EmptyInput("validate_pnd: empty probability sequence");
    }
    if (!(tail_bound >= 0.0)) {
        throw Error("validate_pnd: tail_bound must be a nonnegative number");
    }

    std::vector<double> probs = raw_probs;
    for (std::size_t n = 0; n < probs.size(); ++n) {
        double& p = probs[n];
        if (!std::isfinite(p)) {
            throw Error("validate_pnd: p(" + std::to_string(n) + ") is not finite");
        }
        if (p < 0.0) {
            if (p >= kNegativeDust) {
                p = 0.0;
            } else {
                throw NegativeProbability("validate_pnd: p(" + std::to_string(n) +
                                          ") = " + fmt(p) + " is negative");
            }
        }
    }

    const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    const double lo = 1.0 - tail_bound - kMassSlack;
    const double hi = 1.0 + kMassSlack;
    if (sum < lo || sum > hi) {
        throw NormalizationError("validate_pnd: probability mass " + fmt(sum) +
                                 " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
    }

    if (probs.size() < 2) probs.resize(2, 0.0);  // keep n_max >= 1

    PhotonNumberDistribution pnd;
    pnd.probs = std::move(probs);
    pnd.n_max = static_cast<int>(pnd.probs.size()) - 1;
    pnd.tail_bound = tail_bound;
    return pnd;
}

int two_mode_dim(int n_tot) {
    assert(n_tot >= 0);
    return (n_tot + 1) * (n_tot + 2) / 2;
}

int pair_to_index(int n_a, int n_b) {
    assert(n_a >= 0 && n_b >= 0);
    const int t = n_a + n_b;
    return t * (t + 1) / 2 + n_a;
}

std::vector<TwoModeIndex> index_map(int n_tot) {
    assert(n_tot >= 0);
    std::vector<TwoModeIndex> map;
    map.reserve(two_mode_dim(n_tot));
    for (int t = 0; t <= n_tot; ++t) {
        for (int n_a = 0; n_a <= t; ++n_a) {
            map.push_back({n_a, t - n_a});
        }
    }
    return map;
}

PhotonNumberDistribution marginal_pnd_a(const TwoModeState& state) {
    const Eigen::MatrixXcd& rho = state.rho;
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
        throw NonHermitian("marginal_pnd_a: state matrix is not hermitian");
    }

    std::vector<double> p_a(state.n_tot + 1, 0.0);
    const auto basis = index_map(state.n_tot);
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        double d = rho(i, i).real();
        if (d < 0.0) {
            if (d < kNegativeDust) {
                throw NegativeDiagonal("marginal_pnd_a: diagonal entry " + fmt(d) +
                                       " at |" + std::to_string(basis[i].n_a) + "," +
                                       std::to_string(basis[i].n_b) + ">");
            }
            d = 0.0;
        }
        p_a[basis[i].n_a] += d;
    }
    return validate_pnd(p_a, state.tail_bound);
}

}  // namespace entpot
