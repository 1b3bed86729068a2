#include "entpot/beamsplitter.hpp"

#include <cmath>
#include <numbers>

namespace entpot {

namespace {

constexpr double kSplitterAngle = std::numbers::pi / 4;
constexpr double kHeisenbergTol = 1e-8;

// Lowering-operator blocks of the two chosen mode combinations, mapping the
// total-photon-number block n to block n-1. Within block n the basis is
// (0,n), (1,n-1), ..., (n,0), so mode a lowers index r -> r-1 with weight
// sqrt(r) and mode b keeps r with weight sqrt(n-r).
Eigen::MatrixXd mode_a_block(int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n + 1);
    for (int r = 1; r <= n; ++r) m(r - 1, r) = std::sqrt(static_cast<double>(r));
    return m;
}

Eigen::MatrixXd mode_b_block(int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n + 1);
    for (int r = 0; r < n; ++r) m(r, r) = std::sqrt(static_cast<double>(n - r));
    return m;
}

}  // namespace

SplitAmplitudes split_amplitudes(int n) {
    if (n < 0) throw Error("split_amplitudes: n must be >= 0");
    SplitAmplitudes sa;
    sa.n = n;
    sa.amps.resize(n + 1);
    if (n <= 1000) {
        // multiplicative binomial recurrence; C(n, r) stays within double
        // range here and the amplitudes land within a few ulp
        const double scale = std::exp2(-0.5 * n);
        double c = 1.0;
        for (int r = 0; r <= n; ++r) {
            sa.amps[r] = std::sqrt(c) * scale;
            c = c * (n - r) / (r + 1.0);
        }
    } else {
        const double log_half_n = 0.5 * n * std::numbers::ln2;
        for (int r = 0; r <= n; ++r) {
            const double log_c = std::lgamma(n + 1.0) - std::lgamma(r + 1.0) -
                                 std::lgamma(n - r + 1.0);
            sa.amps[r] = std::exp(0.5 * log_c - log_half_n);
        }
    }
    return sa;
}

TwoModeState output_closed_form(const PhotonNumberDistribution& pnd) {
    TwoModeState state;
    state.n_tot = pnd.n_max;
    state.tail_bound = pnd.tail_bound;
    state.rho = Eigen::MatrixXcd::Zero(two_mode_dim(state.n_tot), two_mode_dim(state.n_tot));

    for (int n = 0; n <= pnd.n_max; ++n) {
        const double p = pnd.probs[n];
        if (p == 0.0) continue;
        const auto amps = split_amplitudes(n).amps;
        const int base = pair_to_index(0, n);  // block n is contiguous
        for (int r = 0; r <= n; ++r) {
            for (int s = 0; s <= n; ++s) {
                state.rho(base + r, base + s) = p * amps[r] * amps[s];
            }
        }
    }
    return state;
}

std::vector<Eigen::MatrixXcd> beamsplitter_unitary_blocks(int n_tot, double angle) {
    if (n_tot < 0) throw Error("beamsplitter_unitary_blocks: n_tot must be >= 0");
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(n_tot + 1);
    for (int n = 0; n <= n_tot; ++n) {
        // generator angle * (a b^+ - a^+ b), real antisymmetric within block n
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n + 1, n + 1);
        for (int r = 1; r <= n; ++r) {
            const double w = angle * std::sqrt(static_cast<double>(r) * (n - r + 1));
            g(r - 1, r) = w;   // a b^+ : (r, n-r) -> (r-1, n-r+1)
            g(r, r - 1) = -w;  // a^+ b
        }
        // exp(g) = V exp(-i diag) V^+ with i*g hermitian
        const Eigen::MatrixXcd ig =
            std::complex<double>(0.0, 1.0) * g.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ig);
        Eigen::VectorXcd phases(n + 1);
        for (int k = 0; k <= n; ++k) {
            phases(k) = std::exp(std::complex<double>(0.0, -es.eigenvalues()(k)));
        }
        blocks.push_back(es.eigenvectors() * phases.asDiagonal() *
                         es.eigenvectors().adjoint());
    }
    return blocks;
}

double heisenberg_residual(const std::vector<Eigen::MatrixXcd>& blocks, int n_tot) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    double worst = 0.0;
    // Relations map block n to block n-1; the top block's image is kept out
    // of the measurement.
    for (int n = 1; n + 1 <= n_tot; ++n) {
        const Eigen::MatrixXcd a = mode_a_block(n).cast<std::complex<double>>();
        const Eigen::MatrixXcd b = mode_b_block(n).cast<std::complex<double>>();
        const Eigen::MatrixXcd rotated_a = blocks[n - 1] * a * blocks[n].adjoint();
        const Eigen::MatrixXcd rotated_b = blocks[n - 1] * b * blocks[n].adjoint();
        worst = std::max(worst,
                         (rotated_a - inv_sqrt2 * (a + b)).cwiseAbs().maxCoeff());
        worst = std::max(worst,
                         (rotated_b - inv_sqrt2 * (b - a)).cwiseAbs().maxCoeff());
    }
    return worst;
}

TwoModeState output_numeric(const PhotonNumberDistribution& pnd) {
    const int n_tot = pnd.n_max;
    const auto blocks = beamsplitter_unitary_blocks(n_tot, kSplitterAngle);

    const double residual = heisenberg_residual(blocks, n_tot);
    if (residual > kHeisenbergTol) {
        throw HeisenbergCheckFailed("output_numeric: mode rotation violated by " +
                                    std::to_string(residual));
    }

    TwoModeState state;
    state.n_tot = n_tot;
    state.tail_bound = pnd.tail_bound;
    state.rho = Eigen::MatrixXcd::Zero(two_mode_dim(n_tot), two_mode_dim(n_tot));
    for (int n = 0; n <= n_tot; ++n) {
        const double p = pnd.probs[n];
        if (p == 0.0) continue;
        // input block: p(n) |n,0><n,0|, i.e. the last basis vector of block n
        const Eigen::VectorXcd col = blocks[n].col(n);
        const int base = pair_to_index(0, n);
        state.rho.block(base, base, n + 1, n + 1) = p * col * col.adjoint();
    }
    return state;
}

}  // namespace entpot
