#include "entpot/moments.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace entpot {

namespace {

int required_moment(HankelKind kind, int order) {
    return kind == HankelKind::L ? 2 * order : 2 * order + 1;
}

}  // namespace

double MomentSequence::q(int n) const {
    if (zero(n)) return 0.0;
    return std::exp(log_q[n]);
}

MomentSequence moment_sequence(const PhotonNumberDistribution& pnd) {
    MomentSequence ms;
    ms.n_max = pnd.n_max;
    ms.exact_tail = pnd.exact();
    ms.log_q.resize(pnd.n_max + 1, 0.0);
    ms.is_zero.resize(pnd.n_max + 1, 0);
    for (int n = 0; n <= pnd.n_max; ++n) {
        const double p = pnd.probs[n];
        if (p > 0.0) {
            ms.log_q[n] = std::lgamma(n + 1.0) + std::log(p);
        } else {
            ms.is_zero[n] = 1;
        }
    }
    return ms;
}

MandelStatistics mandel_statistics(const PhotonNumberDistribution& pnd) {
    MandelStatistics st;
    for (int n = 0; n <= pnd.n_max; ++n) {
        st.mean += n * pnd.probs[n];
        st.second_moment += static_cast<double>(n) * n * pnd.probs[n];
    }
    st.antibunching_value = st.second_moment - st.mean * st.mean - st.mean;
    st.mandel_q = st.mean > 0.0 ? st.antibunching_value / st.mean
                                : std::numeric_limits<double>::quiet_NaN();
    return st;
}

bool hankel_feasible(const MomentSequence& ms, HankelKind kind, int order) {
    return order >= 0 && ms.available(required_moment(kind, order));
}

Eigen::MatrixXd hankel_scaled(const MomentSequence& ms, HankelKind kind, int order) {
    if (order < 0) throw Error("hankel_scaled: order must be >= 0");
    if (!hankel_feasible(ms, kind, order)) {
        throw OrderTooLarge("hankel_scaled: order " + std::to_string(order) +
                            " needs moment q_" + std::to_string(required_moment(kind, order)) +
                            " beyond the stored range (n_max = " + std::to_string(ms.n_max) +
                            ", tail not exact)");
    }

    constexpr double ln2 = std::numbers::ln2;
    Eigen::MatrixXd h(order + 1, order + 1);
    for (int n = 0; n <= order; ++n) {
        for (int m = n; m <= order; ++m) {
            double v = 0.0;
            if (kind == HankelKind::L) {
                const int s = n + m;
                if (!ms.zero(s)) {
                    v = std::exp(ms.log_q[s] - s * ln2 -
                                 std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
                }
            } else {
                const int s = n + m + 1;
                if (!ms.zero(s)) {
                    v = std::exp(ms.log_q[s] - s * ln2 -
                                 0.5 * (std::lgamma(n + 2.0) + std::lgamma(n + 1.0) +
                                        std::lgamma(m + 2.0) + std::lgamma(m + 1.0)));
                }
            }
            h(n, m) = v;
            h(m, n) = v;
        }
    }
    return h;
}

int default_max_order(const PhotonNumberDistribution& pnd) {
    return std::clamp((pnd.n_max - 1) / 2, 1, 20);
}

ClassicalityCertificate classicality_check(const PhotonNumberDistribution& pnd,
                                           int max_order, double tol) {
    if (max_order < 1) throw Error("classicality_check: max_order must be >= 1");
    if (!(tol > 0.0)) throw Error("classicality_check: tol must be > 0");

    const MomentSequence ms = moment_sequence(pnd);
    if (!hankel_feasible(ms, HankelKind::L, 1) && !hankel_feasible(ms, HankelKind::L_tilde, 1)) {
        throw OrderTooLarge("classicality_check: not enough moments for order 1 "
                            "(n_max = " + std::to_string(ms.n_max) + ", tail not exact)");
    }

    ClassicalityCertificate cert;
    cert.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int order = 0; order <= max_order; ++order) {
        for (HankelKind kind : {HankelKind::L, HankelKind::L_tilde}) {
            if (!hankel_feasible(ms, kind, order)) continue;
            const Eigen::MatrixXd h = hankel_scaled(ms, kind, order);
            const double lambda_min =
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly)
                    .eigenvalues()(0);
            cert.min_eigenvalue = std::min(cert.min_eigenvalue, lambda_min);
            cert.max_order_tested = order;
            const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
            if (lambda_min < -tol * scale) {
                cert.verdict = ClassicalityVerdict::nonclassical;
                cert.detecting_kind =
                    kind == HankelKind::L ? DetectingKind::L : DetectingKind::L_tilde;
                cert.detecting_order = order;
                cert.min_eigenvalue = lambda_min;
                return cert;
            }
        }
    }
    return cert;
}

}  // namespace entpot
