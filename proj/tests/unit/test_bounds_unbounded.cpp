#include <doctest.h>

#include <cmath>

#include "mmax/bounds_unbounded.hpp"
#include "mmax/error.hpp"
#include "mmax/oracles.hpp"
#include "mmax/sampler.hpp"
#include "support.hpp"

using namespace mmax;
using namespace mmax::test;

TEST_SUITE("bounds_unbounded") {

TEST_CASE("u_r reduces to Markov at r = 1") {
    CHECK(u_r(50, 1.0, 3.0, 0.1) == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(u_r(1, 2.0, 1.0, 0.5) == doctest::Approx(0.70710678118654752).epsilon(1e-14));
}

TEST_CASE("u_r at the oracle r* for n = 1e6") {
    const double r = oracle_r_star(1000000, 1.0, 0.05);
    CHECK(r == doctest::Approx(14.185450917042254).epsilon(1e-13));
    const double u = u_r(1000000, r, 1.0, 0.05);
    CHECK(u == doctest::Approx(1.4195048416078787e-5).epsilon(1e-12));
    CHECK(std::abs(u - 1.4194e-5) <= 2e-8);
    CHECK(u * 1e6 / r >= 0.99);
    CHECK(u * 1e6 / r <= 1.01);
}

TEST_CASE("oracle r*") {
    CHECK(oracle_r_star(1000, 10.4913, 0.04999) == doctest::Approx(10.321589180902599).epsilon(1e-12));
    CHECK(oracle_r_star(16, 0.3, 0.3) == doctest::Approx(1.7528072817015549).epsilon(1e-13));
    CHECK(oracle_r_star(16, 0.3, 0.3) == doctest::Approx(1.7526).epsilon(5e-4));
    CHECK_THROWS_AS(oracle_r_star(2, 1.0, 0.05), DomainError);
}

TEST_CASE("total-mass confidence bounds") {
    CHECK(total_mass_ucb(10.0, 1000, 1e-5) == doctest::Approx(10.491503609491407).epsilon(1e-13));
    CHECK(total_mass_ucb(0.0, 1000, 1e-5) == doctest::Approx(2 * std::log(1e5) / 1000).epsilon(1e-13));
    for (double s : {0.0, 0.01, 1.0, 50.0}) {
        CHECK(total_mass_ucb(s, 200, 1e-3) >= s);
        CHECK(total_mass_lcb(s, 200, 1e-3) <= s);
        CHECK(total_mass_lcb(s, 200, 1e-3) >= 0.0);
    }
    const auto sample = IncidenceSample::from_counts(1000, std::vector<Count>(10, 1000));
    CHECK(total_mass_ucb(sample, 1e-5) == doctest::Approx(total_mass_ucb(10.0, 1000, 1e-5)));
}

TEST_CASE("r condition") {
    CHECK(condition_check(1000, 10.3216));
    CHECK_FALSE(condition_check(1000000, 1.5));
    // Boundary: solve (r-1) + log(r-1) = 1 + log log n by bisection; >= is inclusive.
    const Count n = 5000;
    const double target = 1 + std::log(std::log(5000.0));
    double lo = 1.0 + 1e-12, hi = 20.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((mid - 1) + std::log(mid - 1) >= target ? hi : lo) = mid;
    }
    CHECK(condition_check(n, hi));
    CHECK_FALSE(condition_check(n, lo - 1e-9));
}

TEST_CASE("unbounded bound chain at S_hat = 10") {
    const auto e = unbounded_bound(10000, 1000, UnboundedConfig{});
    CHECK(e.diagnostics.at("S_star") == doctest::Approx(10.491503609491407).epsilon(1e-12));
    CHECK(e.diagnostics.at("R_star") == doctest::Approx(10.3216085881749).epsilon(1e-12));
    CHECK(e.raw_value == doctest::Approx(0.0099342447651977696).epsilon(1e-12));
    CHECK(std::abs(e.raw_value - 0.009943) <= 1e-5);
    CHECK(e.diagnostics.at("condition_ok") == 1.0);
    CHECK(e.warnings.empty());
    REQUIRE(e.beta);
    CHECK(*e.beta == 1e-5);
}

TEST_CASE("unbounded bound on an empty sample") {
    const auto e = unbounded_bound(IncidenceSample(1000, {}, {}), UnboundedConfig{});
    CHECK(e.diagnostics.at("S_star") == doctest::Approx(0.023025850929940457).epsilon(1e-12));
    CHECK(e.diagnostics.at("R_star") == doctest::Approx(4.1999050978825941).epsilon(1e-12));
    CHECK(e.raw_value == doctest::Approx(0.0048706534480497762).epsilon(1e-12));
}

TEST_CASE("unbounded bound is nondecreasing in S_hat") {
    double prev = 0.0;
    for (Count U = 0; U <= 60000; U += 250) {
        const double v = unbounded_bound(U, 1000, UnboundedConfig{}).raw_value;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("unbounded bound preconditions") {
    CHECK_THROWS_AS(unbounded_bound(10, 2, UnboundedConfig{}), DomainError);
    CHECK_THROWS_AS((UnboundedConfig{0.05, 0.05}).validate(), DomainError);
    CHECK_THROWS_AS(u_r(10, 0.5, 1.0, 0.05), DomainError);
}

TEST_CASE("expected unseen r-mass") {
    const std::vector<double> p{0.5, 0.25};
    const double expect = std::pow(0.5, 2) * std::pow(0.5, 3) + std::pow(0.25, 2) * std::pow(0.75, 3);
    CHECK(expected_unseen_r_mass(p, 3, 2.0) == doctest::Approx(expect));
}

TEST_CASE("impossibility demo construction") {
    const auto d = worstcase_impossibility_demo(10, 0.1, 0.05);
    CHECK(d.x >= 0.05);
    CHECK(d.x > 0.0);
    CHECK(d.x < 1.0);
    CHECK(d.c > 1.0);
    CHECK(d.c < 10.0);
    CHECK(d.exceed_prob == doctest::Approx(d.c * 0.1).epsilon(1e-12));
    CHECK(d.exceed_prob > 0.1);
    CHECK(d.p_star.alphabet_size() == static_cast<std::size_t>(d.adversarial + d.certain));
}

TEST_CASE("impossibility demo exceedance by simulation") {
    const auto d = worstcase_impossibility_demo(20, 0.05, 0.08);
    constexpr int reps = 20000;
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
        SeededStream rng(77, static_cast<std::uint64_t>(r));
        hits += mmax_exact(d.p_star, draw_sample(d.p_star, 20, rng)) >= 0.08;
    }
    CHECK(std::abs(hits / double(reps) - d.exceed_prob) <= 3 * binomial_se(d.exceed_prob, reps));
}

}
