#include "entpot/npt.hpp"

#include <cmath>
#include <numbers>

namespace entpot {

namespace {

// <na',nb'| PT |na,nb> from the factorial moments; zero off the
// difference-conserving delta and for moment indices beyond the stored
// range (the truncation contract).
double pt_entry(const MomentSequence& ms, int na_p, int nb_p, int na, int nb) {
    if (na_p + nb != na + nb_p) return 0.0;
    const int s = na + nb_p;
    if (ms.zero(s)) return 0.0;
    return std::exp(ms.log_q[s] - s * std::numbers::ln2 -
                    0.5 * (std::lgamma(na_p + 1.0) + std::lgamma(nb_p + 1.0) +
                           std::lgamma(na + 1.0) + std::lgamma(nb + 1.0)));
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly)
        .eigenvalues()(0);
}

}  // namespace

int square_index(int n_a, int n_b, int n_single) {
    return n_a * (n_single + 1) + n_b;
}

Eigen::MatrixXcd embed_product_basis(const TwoModeState& state) {
    const int k = state.n_tot;
    const int dim = (k + 1) * (k + 1);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const auto basis = index_map(k);
    for (Eigen::Index i = 0; i < state.rho.rows(); ++i) {
        const int row = square_index(basis[i].n_a, basis[i].n_b, k);
        for (Eigen::Index j = 0; j < state.rho.cols(); ++j) {
            out(row, square_index(basis[j].n_a, basis[j].n_b, k)) = state.rho(i, j);
        }
    }
    return out;
}

Eigen::MatrixXcd partial_transpose_square(const Eigen::MatrixXcd& rho, int n_single) {
    const int k1 = n_single + 1;
    if (rho.rows() != k1 * k1 || rho.cols() != k1 * k1) {
        throw Error("partial_transpose_square: matrix does not match basis size");
    }
    Eigen::MatrixXcd out(rho.rows(), rho.cols());
    for (int na = 0; na <= n_single; ++na) {
        for (int nb = 0; nb <= n_single; ++nb) {
            for (int na_p = 0; na_p <= n_single; ++na_p) {
                for (int nb_p = 0; nb_p <= n_single; ++nb_p) {
                    out(square_index(na, nb, n_single), square_index(na_p, nb_p, n_single)) =
                        rho(square_index(na, nb_p, n_single), square_index(na_p, nb, n_single));
                }
            }
        }
    }
    return out;
}

Eigen::MatrixXcd partial_transpose(const TwoModeState& state) {
    const double scale = std::max(1.0, state.rho.cwiseAbs().maxCoeff());
    if ((state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
        throw NonHermitianInput("partial_transpose: input matrix is not hermitian");
    }
    return partial_transpose_square(embed_product_basis(state), state.n_tot);
}

Eigen::MatrixXd pt_closed_form(const PhotonNumberDistribution& pnd) {
    const MomentSequence ms = moment_sequence(pnd);
    const int k = pnd.n_max;
    const int dim = (k + 1) * (k + 1);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (int na_p = 0; na_p <= k; ++na_p) {
        for (int nb_p = 0; nb_p <= k; ++nb_p) {
            for (int na = 0; na <= k; ++na) {
                const int nb = na + nb_p - na_p;  // delta: na' + nb == na + nb'
                if (nb < 0 || nb > k) continue;
                out(square_index(na_p, nb_p, k), square_index(na, nb, k)) =
                    pt_entry(ms, na_p, nb_p, na, nb);
            }
        }
    }
    return out;
}

WitnessResult witness_2x2(const PhotonNumberDistribution& pnd, double tol) {
    const MandelStatistics st = mandel_statistics(pnd);
    WitnessResult r;
    r.witness.entries << 1.0, 0.5 * st.mean,
                         0.5 * st.mean, 0.25 * (st.second_moment - st.mean);
    r.witness.det = r.witness.entries.determinant();
    r.fires = r.witness.det < -tol;
    return r;
}

Eigen::MatrixXd principal_submatrix(const PhotonNumberDistribution& pnd,
                                    PtSubmatrixKind kind, int order) {
    const MomentSequence ms = moment_sequence(pnd);
    const HankelKind hk = kind == PtSubmatrixKind::H ? HankelKind::L : HankelKind::L_tilde;
    if (!hankel_feasible(ms, hk, order)) {
        throw OrderTooLarge("principal_submatrix: order " + std::to_string(order) +
                            " needs moments beyond the stored range");
    }
    const int shift = kind == PtSubmatrixKind::H ? 0 : 1;  // rows |n, n+shift>
    Eigen::MatrixXd h(order + 1, order + 1);
    for (int n = 0; n <= order; ++n) {
        for (int m = n; m <= order; ++m) {
            const double v = pt_entry(ms, n, n + shift, m, m + shift);
            h(n, m) = v;
            h(m, n) = v;
        }
    }
    return h;
}

PtSpectrum pt_spectrum(const PhotonNumberDistribution& pnd) {
    const MomentSequence ms = moment_sequence(pnd);
    const int k = pnd.n_max;

    PtSpectrum spec;
    spec.min_eigenvalue = std::numeric_limits<double>::infinity();
    // The PT conserves d = n_a - n_b. Block d collects pairs (i+d, i),
    // i = 0..k-d; blocks -d and +d are permutation-similar, so each d > 0
    // counts twice.
    for (int d = 0; d <= k; ++d) {
        const int size = k - d + 1;
        Eigen::MatrixXd block(size, size);
        for (int i = 0; i < size; ++i) {
            for (int j = i; j < size; ++j) {
                const double v = pt_entry(ms, i + d, i, j + d, j);
                block(i, j) = v;
                block(j, i) = v;
            }
        }
        const Eigen::VectorXd eigs =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(block, Eigen::EigenvaluesOnly)
                .eigenvalues();
        const double mult = d == 0 ? 1.0 : 2.0;
        spec.min_eigenvalue = std::min(spec.min_eigenvalue, eigs(0));
        spec.trace_norm += mult * eigs.cwiseAbs().sum();
        spec.trace += mult * block.trace();
    }
    return spec;
}

NPTCertificate npt_certificate(const PhotonNumberDistribution& pnd,
                               int max_order, double tol) {
    if (max_order < 0) throw Error("npt_certificate: max_order must be >= 0");
    if (!(tol > 0.0)) throw Error("npt_certificate: tol must be > 0");

    const MomentSequence ms = moment_sequence(pnd);
    const PtSpectrum spec = pt_spectrum(pnd);

    NPTCertificate cert;
    cert.min_pt_eigenvalue = spec.min_eigenvalue;
    cert.log_negativity = std::max(0.0, std::log2(spec.trace_norm));
    // PT entries are p(s) C(s,.)-weighted and never exceed 1, so the scale
    // floor keeps the threshold at -tol.
    cert.verdict = spec.min_eigenvalue < -tol ? NptVerdict::npt : NptVerdict::no_detection;

    if (witness_2x2(pnd, tol).fires) {
        cert.method = NptMethod::witness_2x2;
        return cert;
    }
    for (int order = 0; order <= max_order; ++order) {
        for (PtSubmatrixKind kind : {PtSubmatrixKind::H, PtSubmatrixKind::H_tilde}) {
            const HankelKind hk =
                kind == PtSubmatrixKind::H ? HankelKind::L : HankelKind::L_tilde;
            if (!hankel_feasible(ms, hk, order)) continue;
            const Eigen::MatrixXd sub = principal_submatrix(pnd, kind, order);
            const double scale = std::max(1.0, sub.cwiseAbs().maxCoeff());
            if (min_eigenvalue(sub) < -tol * scale) {
                cert.method = kind == PtSubmatrixKind::H ? NptMethod::submatrix_H
                                                         : NptMethod::submatrix_H_tilde;
                cert.detecting_order = order;
                return cert;
            }
        }
    }
    cert.method = NptMethod::full_spectrum;
    return cert;
}

}  // namespace entpot
