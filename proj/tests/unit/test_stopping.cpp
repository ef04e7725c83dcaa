#include <doctest.h>

#include "mmax/error.hpp"
#include "mmax/estimators.hpp"
#include "mmax/sampler.hpp"
#include "mmax/stopping.hpp"

using namespace mmax;

namespace {

// Replays the sampler and evaluates the batch bounds on the full sample after
// every unit; the first n at which the rule fires must match run_stopping.
Count direct_stop(const PrevalenceModel& model, const StoppingPolicy& policy, double q, SeededStream& rng) {
    const std::size_t M = model.alphabet_size();
    SequentialSampler sampler(model, q, rng);
    std::vector<Count> counts(M, 0);
    Count errors = 0;
    for (Count n = 1; n <= policy.n_max; ++n) {
        const auto& unit = sampler.next();
        for (std::size_t j : unit.present) ++counts[j];
        errors += unit.errors;
        std::vector<Count> all = counts;
        all.insert(all.end(), static_cast<std::size_t>(errors), 1);
        const auto sample = IncidenceSample::from_counts(n, all);
        bool fire = false;
        switch (policy.kind) {
            case StoppingKind::mmax_bounded:
                if (static_cast<double>(n) > policy.bounded.b_for(n))
                    fire = bounded_dd_bound(sample, static_cast<Count>(M) + errors, policy.bounded).reported_value <=
                           policy.epsilon;
                break;
            case StoppingKind::mmax_unbounded:
                if (n >= 3) {
                    try {
                        fire = unbounded_bound(sample, policy.unbounded).reported_value <= policy.epsilon;
                    } catch (const DomainError&) {
                    }
                }
                break;
            case StoppingKind::coverage: {
                const auto c = coverage_estimate(sample);
                fire = c && *c > policy.coverage_target;
                break;
            }
        }
        if (fire) return n;
    }
    return policy.n_max;
}

}  // namespace

TEST_SUITE("stopping") {

TEST_CASE("nothing can be missed when every prevalence is 1") {
    const auto model = PrevalenceModel::from_probs({1.0, 1.0, 1.0});
    SeededStream rng(1, 1);
    const auto out = run_stopping(model, StoppingPolicy::mmax_bounded(0.5, 0.05, 1000), 0.0, rng);
    CHECK(out.stopped);
    CHECK_FALSE(out.type1);
    CHECK(out.missed_fraction == 0.0);
    CHECK(out.n_stop < 1000);
}

TEST_CASE("incremental rules agree with batch evaluation") {
    const std::vector<std::pair<PrevalenceModel, double>> cases{
        {make_prevalences(PrevalenceKind::zipf, 1.05, 300), 0.0},
        {make_prevalences(PrevalenceKind::truncated_geometric, 0.05, 200), 0.002},
        {make_prevalences(PrevalenceKind::homogeneous, 20.0, 150), 0.005},
    };
    const std::vector<StoppingPolicy> policies{
        StoppingPolicy::mmax_bounded(0.02, 0.05, 3000),
        StoppingPolicy::mmax_unbounded(0.02, 0.05, 3000),
        StoppingPolicy::coverage(0.99, 0.02, 3000),
    };
    for (std::size_t c = 0; c < cases.size(); ++c)
        for (std::size_t p = 0; p < policies.size(); ++p) {
            SeededStream a(21, c * 10 + p), b(21, c * 10 + p);
            const auto out = run_stopping(cases[c].first, policies[p], cases[c].second, a);
            CAPTURE(c);
            CAPTURE(p);
            CHECK(out.n_stop == direct_stop(cases[c].first, policies[p], cases[c].second, b));
        }
}

TEST_CASE("coverage rule stops early on a homogeneous community") {
    const auto model = make_prevalences(PrevalenceKind::homogeneous, 20.0, 1500);
    const auto policy = StoppingPolicy::coverage(0.99, 0.005, 10000);
    int type1 = 0;
    for (int r = 0; r < 200; ++r) {
        SeededStream rng(5, static_cast<std::uint64_t>(r));
        type1 += run_stopping(model, policy, 0.0, rng).type1;
    }
    CHECK(type1 / 200.0 >= 0.97);
}

TEST_CASE("relevance set ignores contamination") {
    const auto model = make_prevalences(PrevalenceKind::truncated_geometric, 0.05, 400);
    const auto policy = StoppingPolicy::coverage(0.99, 0.005, 10000);
    Count relevant = 0;
    for (double p : model.probs()) relevant += p >= 0.005;
    for (double q : {0.0, 0.005}) {
        SeededStream rng(6, 6);
        const auto out = run_stopping(model, policy, q, rng);
        const double missed = out.missed_fraction * static_cast<double>(relevant);
        CHECK(missed == doctest::Approx(std::round(missed)));
        CHECK(missed <= relevant);
    }
}

TEST_CASE("single-replicate grid row equals the outcome") {
    StoppingGrid grid;
    grid.scenarios = {{"tg", make_prevalences(PrevalenceKind::truncated_geometric, 0.05, 300)}};
    grid.policies = {{"bounded", StoppingPolicy::mmax_bounded(0.01, 0.05, 5000)}};
    grid.qs = {0.001};
    grid.reps = 1;
    grid.master_seed = 99;
    const auto rows = stopping_experiment(grid);
    REQUIRE(rows.size() == 1);
    SeededStream rng(99, stopping_stream_index("tg", "bounded", 0.001, 0));
    const auto out = run_stopping(grid.scenarios[0].model, grid.policies[0].policy, 0.001, rng);
    CHECK(rows[0].mean_n_stop == static_cast<double>(out.n_stop));
    CHECK(rows[0].mean_missed == out.missed_fraction);
    CHECK(rows[0].type1_rate == (out.type1 ? 1.0 : 0.0));
    CHECK(rows[0].mean_extra == static_cast<double>(out.extra_species));
}

TEST_CASE("grid rows do not depend on thread count or grid composition") {
    StoppingGrid grid;
    grid.scenarios = {{"h", make_prevalences(PrevalenceKind::homogeneous, 20.0, 200)},
                      {"z", make_prevalences(PrevalenceKind::zipf, 1.05, 200)}};
    grid.policies = {{"unbounded", StoppingPolicy::mmax_unbounded(0.01, 0.05, 4000)},
                     {"coverage", StoppingPolicy::coverage(0.99, 0.01, 4000)}};
    grid.qs = {0.0, 0.001};
    grid.reps = 6;
    grid.threads = 1;
    const auto serial = stopping_experiment(grid);
    grid.threads = 3;
    const auto parallel = stopping_experiment(grid);
    REQUIRE(serial.size() == 8);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].scenario == parallel[i].scenario);
        CHECK(serial[i].mean_n_stop == parallel[i].mean_n_stop);
        CHECK(serial[i].mean_missed == parallel[i].mean_missed);
        CHECK(serial[i].mean_extra == parallel[i].mean_extra);
    }
    grid.scenarios.erase(grid.scenarios.begin());
    const auto subset = stopping_experiment(grid);
    for (std::size_t i = 0; i < subset.size(); ++i) CHECK(subset[i].mean_n_stop == serial[i + 4].mean_n_stop);
}

TEST_CASE("policy validation") {
    CHECK_THROWS_AS(StoppingPolicy::mmax_bounded(0.0, 0.05, 10), DomainError);
    CHECK_THROWS_AS(StoppingPolicy::mmax_unbounded(0.01, 0.05, 0), DomainError);
    CHECK_THROWS_AS(StoppingPolicy::coverage(1.0, 0.01, 10), DomainError);
    CHECK(parse_stopping_kind("coverage") == StoppingKind::coverage);
    CHECK_THROWS_AS(parse_stopping_kind("chao"), DomainError);
    SeededStream rng(1, 1);
    CHECK_THROWS_AS(run_stopping(PrevalenceModel::from_probs({0.5}), StoppingPolicy::coverage(0.9, 0.1, 10), 1.5, rng),
                    DomainError);
}

TEST_CASE("default scenarios") {
    const auto sc = default_stopping_scenarios();
    REQUIRE(sc.size() == 4);
    for (const auto& s : sc) CHECK(s.model.alphabet_size() == 1500);
    CHECK(default_contamination_grid().size() == 6);
}

}
