#pragma once

#include <Eigen/Dense>

#include "entpot/fock.hpp"

namespace entpot {

/// Factorial moments q_n = n! p(n), kept as ln(q_n) plus an explicit zero
/// flag so that factorial growth never leaves double range. When the source
/// distribution was exact (tail_bound == 0), q_n = 0 holds identically for
/// n > n_max; otherwise those moments are unknown.
struct MomentSequence {
    std::vector<double> log_q;  // ln(n! p(n)); meaningful where !is_zero[n]
    std::vector<char> is_zero;  // q_n == 0 exactly
    int n_max = 1;
    bool exact_tail = true;

    // q_n as a double; only valid for n <= n_max or exact_tail.
    double q(int n) const;
    bool zero(int n) const { return n > n_max ? true : static_cast<bool>(is_zero[n]); }
    bool available(int n) const { return n <= n_max || exact_tail; }
};

MomentSequence moment_sequence(const PhotonNumberDistribution& pnd);

/// First and second photon-number moments of the stored distribution.
/// antibunching_value = <n^2> - <n>^2 - <n>; negative values mean
/// sub-Poissonian counting statistics. mandel_q is NaN when the mean
/// vanishes.
struct MandelStatistics {
    double mean = 0.0;
    double second_moment = 0.0;
    double antibunching_value = 0.0;
    double mandel_q = 0.0;
};

MandelStatistics mandel_statistics(const PhotonNumberDistribution& pnd);

enum class HankelKind { L, L_tilde };

/// Scaled moment matrix of size (order+1):
///   kind L:        entry(n,m) = q_{n+m}   / (2^{n+m}   n! m!)
///   kind L_tilde:  entry(n,m) = q_{n+m+1} / (2^{n+m+1} sqrt((n+1)! n! (m+1)! m!))
/// This is the raw Hankel matrix conjugated by a positive diagonal, so it
/// has the same inertia while every entry stays bounded by 1 (the raw
/// matrices overflow double precision near n = 170). Built in log domain.
/// Throws OrderTooLarge when the required moments are beyond the stored
/// range and the tail is not exact.
Eigen::MatrixXd hankel_scaled(const MomentSequence& ms, HankelKind kind, int order);

/// True when hankel_scaled(ms, kind, order) can be formed.
bool hankel_feasible(const MomentSequence& ms, HankelKind kind, int order);

enum class ClassicalityVerdict { classical_up_to_order, nonclassical };
enum class DetectingKind { none, L, L_tilde };

struct ClassicalityCertificate {
    ClassicalityVerdict verdict = ClassicalityVerdict::classical_up_to_order;
    DetectingKind detecting_kind = DetectingKind::none;
    int detecting_order = -1;   // -1 when nothing detected
    double min_eigenvalue = 0;  // of the scaled detecting matrix; smallest seen if classical
    int max_order_tested = 0;
};

/// Walk the scaled matrices for N = 0..max_order (kind L before L_tilde at
/// each N) and report the first one with an eigenvalue below
/// -tol * max(1, max abs entry). Orders whose moments are unavailable are
/// skipped; if even N = 1 is infeasible for both kinds, OrderTooLarge
/// propagates.
ClassicalityCertificate classicality_check(const PhotonNumberDistribution& pnd,
                                           int max_order, double tol = 1e-10);

/// Default order policy: floor((n_max - 1) / 2) clamped to [1, 20].
int default_max_order(const PhotonNumberDistribution& pnd);

}  // namespace entpot
