#include <doctest.h>

#include <cmath>

#include "entpot/moments.hpp"
#include "entpot/states.hpp"
#include "test_support.hpp"

using namespace entpot;

TEST_CASE("fock generator") {
    CHECK(make_fock(0).probs == std::vector<double>{1.0, 0.0});
    CHECK(make_fock(1).probs == std::vector<double>{0.0, 1.0});
    const auto f3 = make_fock(3);
    CHECK(f3.n_max == 3);
    CHECK(f3.probs[3] == 1.0);
    CHECK(mandel_statistics(f3).antibunching_value == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK_THROWS_AS(make_fock(-1), Error);
}

TEST_CASE("poisson generator") {
    CHECK(make_poisson(0.0, 1e-12).probs == std::vector<double>{1.0, 0.0});

    const auto p1 = make_poisson(1.0, 1e-12);
    CHECK(p1.probs[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(p1.n_max >= 12);
    CHECK(p1.n_max <= 22);
    CHECK(p1.tail_bound < 1e-12);
    // realized tail mass within the declared bound
    CHECK(1.0 - p1.mass() <= p1.tail_bound + 1e-15);

    // a Poisson stream is the antibunching boundary case
    CHECK(mandel_statistics(p1).antibunching_value ==
          doctest::Approx(0.0).scale(1).epsilon(1e-10));

    const auto p5 = make_poisson(5.0, 1e-12);
    CHECK(mandel_statistics(p5).mean == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(mandel_statistics(p5).antibunching_value == doctest::Approx(0.0).scale(1).epsilon(1e-8));

    CHECK_THROWS_AS(make_poisson(-1.0, 1e-12), Error);
    CHECK_THROWS_AS(make_poisson(1.0, 0.0), Error);
    CHECK_THROWS_AS(make_poisson(4000.0, 1e-12), TailNotReachable);
}

TEST_CASE("thermal generator") {
    CHECK(make_thermal(0.0, 1e-12).probs == std::vector<double>{1.0, 0.0});

    const auto t1 = make_thermal(1.0, 1e-12);
    CHECK(t1.n_max == 39);  // smallest n with 2^-(n+1) below 1e-12
    for (int n = 0; n <= 5; ++n) {
        CHECK(t1.probs[n] == doctest::Approx(std::pow(2.0, -(n + 1))).epsilon(1e-14));
    }
    CHECK(t1.tail_bound == doctest::Approx(std::pow(2.0, -40)).epsilon(1e-14));
    CHECK(1.0 - t1.mass() <= t1.tail_bound + 1e-15);
    CHECK_THROWS_AS(make_thermal(5000.0, 1e-12), TailNotReachable);

    // second moments need a tighter tail than 1e-12 to settle at 1e-10
    const auto t1_tight = make_thermal(1.0, 1e-14);
    CHECK(mandel_statistics(t1_tight).antibunching_value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("binomial generator") {
    const auto b = make_binomial(2, 0.5);
    CHECK(b.probs[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(b.probs[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b.probs[2] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mandel_statistics(b).antibunching_value == doctest::Approx(-0.5).epsilon(1e-13));

    CHECK(make_binomial(2, 0.0).probs == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(make_binomial(2, 1.0).probs == std::vector<double>{0.0, 0.0, 1.0});
    CHECK_THROWS_AS(make_binomial(0, 0.5), Error);
    CHECK_THROWS_AS(make_binomial(2, 1.5), Error);

    // large-M path agrees with the exact-coefficient one
    const auto big = make_binomial(80, 0.3);
    double mean = mandel_statistics(big).mean;
    CHECK(mean == doctest::Approx(80 * 0.3).epsilon(1e-12));
}

TEST_CASE("vacuum-two mixture generator") {
    CHECK(make_vacuum_two_mixture(0.0).probs == std::vector<double>{1.0, 0.0, 0.0});

    const auto v = make_vacuum_two_mixture(0.25);
    CHECK(v.probs == std::vector<double>{0.75, 0.0, 0.25});
    CHECK(mandel_statistics(v).antibunching_value == doctest::Approx(0.25).epsilon(1e-14));

    // antibunching value 2*lambda*(1-2*lambda) crosses zero at 1/2
    const auto half = make_vacuum_two_mixture(0.5);
    CHECK(mandel_statistics(half).antibunching_value ==
          doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK_THROWS_AS(make_vacuum_two_mixture(1.0001), Error);
}

TEST_CASE("mixture generator") {
    const auto p = make_poisson(1.0, 1e-12);
    const auto single = make_mixture({p}, {1.0});
    CHECK(single.probs == p.probs);
    CHECK(single.tail_bound == p.tail_bound);

    CHECK_THROWS_AS(make_mixture({}, {}), EmptyInput);
    CHECK_THROWS_AS(make_mixture({p, p}, {0.7, 0.2}), WeightMismatch);
    CHECK_THROWS_AS(make_mixture({p}, {1.0, 0.0}), WeightMismatch);
}

TEST_CASE("mixtures of classical families stay classical") {
    const auto mix = make_mixture({make_poisson(0.5, 1e-14), make_poisson(2.0, 1e-14)},
                                  {0.5, 0.5});
    const auto cert = classicality_check(mix, 10, 1e-10);
    CHECK(cert.verdict == ClassicalityVerdict::classical_up_to_order);
    CHECK(cert.min_eigenvalue >= -1e-10);
}

TEST_CASE("fock/vacuum mixture is nonclassical at order 1") {
    const auto mix = make_mixture({make_fock(1), make_fock(0)}, {0.5, 0.5});
    CHECK(mix.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mix.probs[1] == doctest::Approx(0.5).epsilon(1e-15));

    // raw moment matrix [[0.5, 0.5], [0.5, 0]] has eigenvalues 1/4 +- sqrt(0.3125)
    const auto raw = test::raw_hankel_exact(mix, false, 1);
    const auto eigs = test::eigenvalues(raw);
    CHECK(eigs(0) == doctest::Approx(0.25 - std::sqrt(0.3125)).epsilon(1e-14));
    CHECK(eigs(1) == doctest::Approx(0.25 + std::sqrt(0.3125)).epsilon(1e-14));

    const auto cert = classicality_check(mix, 6, 1e-10);
    CHECK(cert.verdict == ClassicalityVerdict::nonclassical);
    CHECK(cert.detecting_kind == DetectingKind::L);
    CHECK(cert.detecting_order == 1);
}

TEST_CASE("every generator output passes validation unchanged") {
    for (const auto& pnd :
         {make_fock(4), make_poisson(2.5, 1e-10), make_thermal(0.7, 1e-10),
          make_binomial(5, 0.4), make_vacuum_two_mixture(0.3)}) {
        CHECK_NOTHROW(validate_pnd(pnd.probs, pnd.tail_bound));
    }
}

TEST_CASE("family dispatch") {
    FamilySpec spec;
    spec.family = Family::binomial;
    spec.params = {{"M", 2.0}, {"eta", 0.5}};
    CHECK(make_family(spec).probs[1] == doctest::Approx(0.5));

    spec.params = {{"eta", 0.5}};
    CHECK_THROWS_AS(make_family(spec), BadFlag);

    spec.family = Family::mixture;
    spec.params = {{"w0", 0.5}, {"mu0", 0.5}, {"w1", 0.5}, {"mu1", 2.0}};
    spec.tail_target = 1e-12;
    CHECK(make_family(spec).n_max > 5);

    spec.params = {{"w0", 0.5}, {"mu0", 0.5}, {"w1", 0.5}};
    CHECK_THROWS_AS(make_family(spec), BadFlag);

    CHECK(to_string(family_from_string("vacuum-two-mixture")) == "vacuum-two-mixture");
    CHECK_THROWS_AS(family_from_string("squeezed"), BadFlag);
}
