#pragma once

#include <map>
#include <string>
#include <vector>

#include "entpot/fock.hpp"

namespace entpot {

enum class Family { fock, poisson, thermal, binomial, vacuum_two_mixture, mixture, file };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// A named distribution family plus its parameters, as assembled from CLI
/// flags or test fixtures. `params` keys depend on the family:
///   fock: m        poisson: mu       thermal: nbar
///   binomial: M, eta                 vacuum-two-mixture: lambda
///   mixture: w0,mu0 .. w4,mu4 (Poisson components)
/// `tail_target` applies to the infinite families (poisson, thermal,
/// mixture); `path` is used only by Family::file.
struct FamilySpec {
    Family family = Family::fock;
    std::map<std::string, double> params;
    double tail_target = 1e-12;
    std::string path;
};

/// p(n) = delta_{n,m}. Exact, tail_bound = 0, n_max = max(m, 1).
PhotonNumberDistribution make_fock(int m);

/// p(n) = e^{-mu} mu^n / n!, truncated where the analytic remainder bound
/// (term-ratio geometric estimate) drops below tail_target; that bound is
/// recorded as tail_bound. Throws TailNotReachable past n_max = 4096.
PhotonNumberDistribution make_poisson(double mu, double tail_target);

/// p(n) = nbar^n / (1+nbar)^{n+1}; the geometric tail bound is exact.
PhotonNumberDistribution make_thermal(double nbar, double tail_target);

/// p(n) = C(M,n) eta^n (1-eta)^{M-n}. Exact, tail_bound = 0.
PhotonNumberDistribution make_binomial(int trials, double eta);

/// p(0) = 1-lambda, p(2) = lambda. Exact, tail_bound = 0.
PhotonNumberDistribution make_vacuum_two_mixture(double lambda);

/// Pointwise convex combination. Weights must be nonnegative and sum to 1
/// within 1e-12 (WeightMismatch otherwise); tail_bound is the weighted sum
/// of the component bounds.
PhotonNumberDistribution make_mixture(const std::vector<PhotonNumberDistribution>& components,
                                      const std::vector<double>& weights);

/// Dispatch on spec.family with eager parameter validation. Unknown or
/// missing parameter names throw BadFlag; out-of-range values throw Error.
/// Family::file is not handled here (the CLI owns file loading).
PhotonNumberDistribution make_family(const FamilySpec& spec);

}  // namespace entpot
