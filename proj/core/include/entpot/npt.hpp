#pragma once

#include <Eigen/Dense>

#include "entpot/fock.hpp"
#include "entpot/moments.hpp"

namespace entpot {

// Partial transposition swaps the b-mode bra/ket indices:
//   <na,nb|PT(rho)|na',nb'> = <na,nb'|rho|na',nb>.
// On a product-truncated basis (na, nb <= n_single independently) this is a
// pure entry permutation: exact involution, hermiticity- and
// trace-preserving. A total-photon-number truncation is NOT closed under it
// (the swap can raise one side's total), which is why the routines below
// move to the product basis first: for a state cut at total <= n_tot, the
// square na, nb <= n_tot contains the entire support of the partial
// transpose.

/// Linear index of |n_a, n_b> in the product basis [0..n_single]^2,
/// row-major in n_a.
int square_index(int n_a, int n_b, int n_single);

/// Zero-pad a total-number-truncated state into the product basis
/// [0..n_tot]^2 (dimension (n_tot+1)^2).
Eigen::MatrixXcd embed_product_basis(const TwoModeState& state);

/// Partial transpose on the product basis [0..n_single]^2 (entry
/// permutation; applying it twice restores the input bitwise).
Eigen::MatrixXcd partial_transpose_square(const Eigen::MatrixXcd& rho, int n_single);

/// Partial transpose of a two-mode state, returned on the product basis
/// [0..n_tot]^2. Throws NonHermitian when the input violates hermiticity
/// beyond 1e-14 entrywise.
Eigen::MatrixXcd partial_transpose(const TwoModeState& state);

/// The partially transposed splitter output, built directly from the
/// distribution's factorial moments:
///   <na',nb'|PT|na,nb> = delta_{na'+nb, na+nb'} q_{na+nb'}
///                        / (2^{na+nb'} sqrt(na'! nb'! na! nb!)),
/// on the product basis [0..n_max]^2. Moments beyond the stored range count
/// as zero (exact when tail_bound == 0, a <= tail_bound perturbation
/// otherwise).
Eigen::MatrixXd pt_closed_form(const PhotonNumberDistribution& pnd);

/// 2x2 entanglement witness evaluated from the first two photon-number
/// moments: [[1, <n>/2], [<n>/2, (<n^2>-<n>)/4]]. Its determinant equals
/// antibunching_value / 4; a determinant below -tol certifies a negative
/// partial transpose.
struct WitnessMatrix2x2 {
    Eigen::Matrix2d entries;
    double det = 0.0;
};

struct WitnessResult {
    WitnessMatrix2x2 witness;
    bool fires = false;
};

WitnessResult witness_2x2(const PhotonNumberDistribution& pnd, double tol = 1e-10);

enum class PtSubmatrixKind { H, H_tilde };

/// Principal submatrix of pt_closed_form of size (order+1):
///   H:       rows/columns |n, n>,    entries q_{n+m}   / (2^{n+m} n! m!)
///   H_tilde: rows/columns |n, n+1>,  entries q_{n+m+1} / (2^{n+m+1}
///            sqrt((n+1)! n! (m+1)! m!))
/// Same matrices as hankel_scaled(L / L_tilde) arrived at through the
/// two-mode route. Throws OrderTooLarge under the same feasibility rule.
Eigen::MatrixXd principal_submatrix(const PhotonNumberDistribution& pnd,
                                    PtSubmatrixKind kind, int order);

/// Full spectrum summary of pt_closed_form(pnd). The partial transpose
/// conserves n_a - n_b, so it is eigensolved per difference block (the
/// d = 0 block extends H, the d = 1 block extends H_tilde, blocks +-d are
/// permutation-similar) without materializing the (n_max+1)^2 matrix.
struct PtSpectrum {
    double min_eigenvalue = 0.0;
    double trace_norm = 0.0;  // sum of |eigenvalue| over the full spectrum
    double trace = 0.0;
};

PtSpectrum pt_spectrum(const PhotonNumberDistribution& pnd);

enum class NptVerdict { npt, no_detection };
enum class NptMethod { witness_2x2, submatrix_H, submatrix_H_tilde, full_spectrum };

struct NPTCertificate {
    NptVerdict verdict = NptVerdict::no_detection;
    NptMethod method = NptMethod::full_spectrum;  // first detector that fired
    int detecting_order = -1;                     // submatrix order; -1 otherwise
    double min_pt_eigenvalue = 0.0;               // always from the full spectrum
    double log_negativity = 0.0;                  // log2 of the PT trace norm, floored at 0
};

/// Run the witness, then the principal submatrices for orders 0..max_order
/// (H before H_tilde at each order, infeasible orders skipped), then the
/// full block spectrum. `method` records the cheapest detector that fired;
/// the verdict itself always rests on the full spectrum:
/// npt iff min eigenvalue < -tol * max(1, max abs entry).
NPTCertificate npt_certificate(const PhotonNumberDistribution& pnd,
                               int max_order, double tol = 1e-10);

}  // namespace entpot
