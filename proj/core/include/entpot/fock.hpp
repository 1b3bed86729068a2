#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "entpot/errors.hpp"

namespace entpot {

/// A single-mode photon number distribution p(0..n_max), truncated with a
/// declared upper bound on the probability mass beyond n_max.
///
/// tail_bound == 0 means the distribution is exact: p(n) = 0 for every
/// n > n_max, so all higher moments vanish identically. A positive
/// tail_bound means mass up to that amount may live beyond the cutoff and
/// quantities referencing it are unavailable rather than zero.
struct PhotonNumberDistribution {
    std::vector<double> probs;  // probs[n] = p(n); size n_max + 1
    int n_max = 1;
    double tail_bound = 0.0;

    double mass() const;  // sum of stored probabilities
    bool exact() const { return tail_bound == 0.0; }
};

/// Validate a raw probability sequence into a PhotonNumberDistribution.
///
/// Values in [-1e-15, 0) are clamped to zero (float dust from upstream
/// arithmetic); anything more negative throws NegativeProbability. The
/// total mass must lie in [1 - tail_bound, 1 + 1e-12] up to float noise,
/// otherwise NormalizationError. A length-1 input is padded so that
/// n_max >= 1 always holds.
PhotonNumberDistribution validate_pnd(const std::vector<double>& raw_probs,
                                      double tail_bound);

/// Basis label |n_a, n_b> of the two-mode Fock space.
struct TwoModeIndex {
    int n_a = 0;
    int n_b = 0;
    int total() const { return n_a + n_b; }
    bool operator==(const TwoModeIndex&) const = default;
};

/// Number of two-mode basis states with n_a + n_b <= n_tot.
int two_mode_dim(int n_tot);

/// Position of |n_a, n_b> in the canonical ordering: blocks of fixed total
/// photon number t = n_a + n_b in ascending t, within a block ascending n_a.
/// So index 0,1,2,... labels (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
int pair_to_index(int n_a, int n_b);

/// All (n_a, n_b) with n_a + n_b <= n_tot in canonical order;
/// the inverse of pair_to_index.
std::vector<TwoModeIndex> index_map(int n_tot);

/// Dense two-mode density matrix over the canonical basis ordering.
/// The container itself enforces nothing; generators guarantee hermiticity
/// within 1e-14 entrywise and trace within [1 - tail_bound, 1 + 1e-12].
struct TwoModeState {
    int n_tot = 0;
    double tail_bound = 0.0;
    Eigen::MatrixXcd rho;  // two_mode_dim(n_tot) x two_mode_dim(n_tot)

    Eigen::Index dim() const { return rho.rows(); }
};

/// Marginal distribution of mode a: p_a(k) = sum_nb <k,nb|rho|k,nb>.
/// Throws NonHermitian / NegativeDiagonal when the input is not a valid
/// density matrix; the result is re-validated against the state's
/// tail_bound.
PhotonNumberDistribution marginal_pnd_a(const TwoModeState& state);

}  // namespace entpot
