#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mmax/error.hpp"
#include "mmax/estimators.hpp"
#include "mmax/sampler.hpp"
#include "support.hpp"

using namespace mmax;
using namespace mmax::test;

TEST_SUITE("estimators") {

TEST_CASE("S_hat") {
    CHECK(s_hat(IncidenceSample(4, {"a", "b"}, {3, 1})) == 1.0);
    CHECK(s_hat(IncidenceSample(4, {}, {})) == 0.0);
}

TEST_CASE("S_hat is unbiased") {
    const auto model = make_prevalences(PrevalenceKind::zipf, 1.0, 100);
    constexpr int reps = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        SeededStream rng(12, static_cast<std::uint64_t>(r));
        const double s = s_hat(draw_sample(model, 50, rng));
        sum += s;
        sum2 += s * s;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
    CHECK(std::abs(mean - model.total_mass()) < 3 * se);
}

TEST_CASE("coverage estimate") {
    CHECK(coverage_estimate(5, 10, 0, 3) == 1.0);
    CHECK(*coverage_estimate(2, 4, 2, 1) == doctest::Approx(0.75));
    CHECK(*coverage_estimate(IncidenceSample::from_counts(3, {1, 1, 1, 0})) == doctest::Approx(0.0));
    CHECK_FALSE(coverage_estimate(1, 3, 3, 0));
    CHECK_FALSE(coverage_estimate(5, 0, 0, 0));
    CHECK(kCoverageFormula.find("Q1") != std::string_view::npos);
}

TEST_CASE("accumulation curve of a single unit") {
    IncidenceMatrix m(1, {"a", "b", "c"});
    m.set(0, 0, true);
    m.set(0, 2, true);
    SeededStream rng(1, 1);
    CHECK(accumulation_curve(m, 10, rng) == std::vector<double>{2.0});
}

TEST_CASE("accumulation curve of the identity matrix") {
    IncidenceMatrix m(2, {"a", "b"});
    m.set(0, 0, true);
    m.set(1, 1, true);
    SeededStream rng(1, 1);
    CHECK(accumulation_curve(m, 3, rng) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("accumulation curve for a fixed order") {
    IncidenceMatrix m(3, {"a", "b"});
    m.set(0, 0, true);
    m.set(2, 0, true);
    m.set(2, 1, true);
    const std::vector<std::size_t> order{0, 1, 2};
    CHECK(accumulation_for_order(m, order) == std::vector<Count>{1, 1, 2});
    const std::vector<std::size_t> bad{0, 1};
    CHECK_THROWS_AS(accumulation_for_order(m, bad), DomainError);
}

TEST_CASE("random-order curve ends at the total distinct count") {
    SeededStream gen(3, 3);
    const auto m = random_matrix(gen, 30, 12);
    SeededStream rng(3, 4);
    const auto curve = accumulation_curve(m, kDefaultPermutations, rng);
    REQUIRE(curve.size() == 30);
    const auto sums = m.column_sums();
    CHECK(curve.back() == static_cast<double>(std::count_if(sums.begin(), sums.end(), [](Count c) { return c > 0; })));
}

}
