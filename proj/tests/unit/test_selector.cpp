#include <doctest.h>

#include <cmath>

#include "mmax/error.hpp"
#include "mmax/sampler.hpp"
#include "mmax/selector.hpp"

using namespace mmax;

TEST_SUITE("selector") {

TEST_CASE("Lambert W0 values") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lambert_w0(1.0) == doctest::Approx(0.56714329040978387).epsilon(1e-15));
    CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
}

TEST_CASE("heuristic threshold") {
    CHECK(heuristic_threshold(1000, 1500, 0.05, true) == doctest::Approx(15.463428990966439).epsilon(1e-13));
    CHECK(std::abs(heuristic_threshold(1000, 1500, 0.05, true) - 15.46) < 0.005);
    CHECK(heuristic_threshold(1000, 1500, 0.05, false) == doctest::Approx(15.863404309492501).epsilon(1e-13));
    // The prefactor -log(1-alpha)/alpha tends to 1.
    const double a = 1e-9;
    CHECK(heuristic_threshold(500, 500, a, false) == doctest::Approx(std::log(500 / a)).epsilon(1e-8));
}

TEST_CASE("alphabet size at the threshold") {
    for (double S : {0.5, 5.0, 14.4, 100.0}) {
        const double M = threshold_alphabet_size(S, 1000, 0.05);
        CHECK(M == doctest::Approx(threshold_alphabet_size_lambert(S, 1000, 0.05)).epsilon(1e-9));
        const double y = S * 1000 * 0.05 / -std::log1p(-0.05);
        CHECK(M * std::log(M / 0.05) == doctest::Approx(y).epsilon(1e-10));
    }
}

TEST_CASE("regime recommendation") {
    const auto sample_of = [](double gamma) {
        const auto m = make_prevalences(PrevalenceKind::zipf, gamma, 1500);
        std::vector<Count> counts;
        for (double p : m.probs()) counts.push_back(static_cast<Count>(std::llround(p * 1000)));
        return IncidenceSample::from_counts(1000, counts, 1500);
    };
    const auto none = recommend_regime(sample_of(1.05), std::nullopt, 0.05);
    CHECK(none.regime == Regime::unbounded);
    CHECK(none.reason == "no alphabet size");
    CHECK_FALSE(none.threshold);

    // S ~ 14.40 sits 9% below the 15.86 threshold, outside the 5% band.
    const auto mid = recommend_regime(sample_of(0.825), 1500, 0.05);
    CHECK(mid.s_hat == doctest::Approx(14.402).epsilon(3e-3));
    CHECK(mid.regime == Regime::unbounded);

    CHECK(recommend_regime(sample_of(0.75), 1500, 0.05).regime == Regime::bounded);

    // Inside the band.
    const auto near = recommend_regime(IncidenceSample::from_counts(1000, std::vector<Count>(16, 991), 1500), 1500, 0.05);
    CHECK(near.regime == Regime::indifferent);
    CHECK(*near.threshold_simplified == doctest::Approx(15.4634).epsilon(1e-4));
}

}
