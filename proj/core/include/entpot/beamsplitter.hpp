#pragma once

#include <vector>

#include <Eigen/Dense>

#include "entpot/fock.hpp"

namespace entpot {

/// Amplitudes of the n-photon image of |n, 0>: a 50:50 splitter sends it to
/// sum_r amps[r] |r, n-r> with amps[r] = sqrt(C(n,r)) / 2^{n/2}.
struct SplitAmplitudes {
    int n = 0;
    std::vector<double> amps;
};

SplitAmplitudes split_amplitudes(int n);

/// rho_out for a 50:50 splitter fed with the phase-invariant state of the
/// given distribution in mode a and vacuum in mode b, built from the
/// closed-form matrix elements
///   <na',nb'|rho|na,nb> = delta_{na'+nb', na+nb} (na+nb)! p(na+nb)
///                         / (2^{na+nb} sqrt(na'! nb'! na! nb!)),
/// evaluated in log domain. Cutoff n_tot = pnd.n_max; entries off the
/// conserved total-photon-number blocks are exact zeros.
TwoModeState output_closed_form(const PhotonNumberDistribution& pnd);

/// Independent construction: conjugate rho_a (x) |0><0| with a numerically
/// exponentiated block unitary. Cross-checks the mode rotation
///   U a U^-1 = (a+b)/sqrt(2),  U b U^-1 = (b-a)/sqrt(2)
/// on sub-boundary blocks and throws HeisenbergCheckFailed beyond 1e-8.
TwoModeState output_numeric(const PhotonNumberDistribution& pnd);

/// Per-total-photon-number blocks of exp(angle * (a b^+ - a^+ b)) on the
/// truncated space, blocks[n] of size (n+1). angle = pi/4 realizes the 50:50
/// splitter convention above; other angles exist for the sign cross-check.
std::vector<Eigen::MatrixXcd> beamsplitter_unitary_blocks(int n_tot, double angle);

/// Max entrywise violation of the two mode-rotation relations over blocks
/// with total photon number <= n_tot - 1 (the top block is excluded).
double heisenberg_residual(const std::vector<Eigen::MatrixXcd>& blocks, int n_tot);

}  // namespace entpot
