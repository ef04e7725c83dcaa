#include "mmax/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mmax/error.hpp"
#include "mmax/estimators.hpp"
#include "mmax/sampler.hpp"
#include "parallel.hpp"

namespace mmax {

std::string_view to_string(StoppingKind kind) {
    switch (kind) {
        case StoppingKind::mmax_bounded: return "bounded";
        case StoppingKind::mmax_unbounded: return "unbounded";
        case StoppingKind::coverage: return "coverage";
    }
    return "unknown";
}

StoppingKind parse_stopping_kind(std::string_view name) {
    if (name == "bounded" || name == "mmax_bounded") return StoppingKind::mmax_bounded;
    if (name == "unbounded" || name == "mmax_unbounded") return StoppingKind::mmax_unbounded;
    if (name == "coverage") return StoppingKind::coverage;
    throw DomainError("unknown stopping policy '" + std::string(name) + "'");
}

StoppingPolicy StoppingPolicy::mmax_bounded(double epsilon, double alpha, Count n_max) {
    return mmax_bounded(epsilon, BoundedConfig::with_defaults(alpha), n_max);
}

StoppingPolicy StoppingPolicy::mmax_bounded(double epsilon, const BoundedConfig& cfg, Count n_max) {
    StoppingPolicy p;
    p.kind = StoppingKind::mmax_bounded;
    p.epsilon = epsilon;
    p.alpha = cfg.alpha;
    p.n_max = n_max;
    p.relevance_threshold = epsilon;
    p.bounded = cfg;
    p.validate();
    return p;
}

StoppingPolicy StoppingPolicy::mmax_unbounded(double epsilon, double alpha, Count n_max, double beta) {
    StoppingPolicy p;
    p.kind = StoppingKind::mmax_unbounded;
    p.epsilon = epsilon;
    p.alpha = alpha;
    p.n_max = n_max;
    p.relevance_threshold = epsilon;
    p.unbounded = {alpha, beta};
    p.validate();
    return p;
}

StoppingPolicy StoppingPolicy::coverage(double target, double relevance_threshold, Count n_max) {
    StoppingPolicy p;
    p.kind = StoppingKind::coverage;
    p.coverage_target = target;
    p.relevance_threshold = relevance_threshold;
    p.n_max = n_max;
    p.validate();
    return p;
}

void StoppingPolicy::validate() const {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (!(relevance_threshold > 0.0 && relevance_threshold <= 1.0))
        throw DomainError("relevance threshold must be in (0,1]");
    switch (kind) {
        case StoppingKind::mmax_bounded:
            if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must be in (0,1)");
            bounded.validate();
            break;
        case StoppingKind::mmax_unbounded:
            if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must be in (0,1)");
            unbounded.validate();
            break;
        case StoppingKind::coverage:
            if (!(coverage_target > 0.0 && coverage_target < 1.0))
                throw DomainError("coverage target must be in (0,1)");
            break;
    }
}

namespace {

// Running sufficient statistics of the contaminated sample.
struct RunningSample {
    explicit RunningSample(std::size_t M) : counts(M, 0) {}

    void add(std::size_t species) {
        Count& c = counts[species];
        if (c == 0) {
            ++distinct;
        } else if (auto it = freq.find(c); --it->second == 0) {
            freq.erase(it);
        }
        q1 += (c == 0) - (c == 1);
        q2 += (c == 1) - (c == 2);
        ++c;
        ++freq[c];
        ++total;
    }

    void add_errors(Count k) {
        errors += k;
        total += k;
    }

    // sum over declared categories of (1 - N/n)^b; error species have N = 1.
    double m_b(Count n, Count M, double b) const {
        const double nn = static_cast<double>(n);
        double sum = static_cast<double>(M - distinct);
        for (const auto& [k, m] : freq) sum += static_cast<double>(m) * std::pow(1.0 - k / nn, b);
        if (errors > 0) sum += static_cast<double>(errors) * std::pow(1.0 - 1.0 / nn, b);
        return sum;
    }

    std::vector<Count> counts;
    std::map<Count, Count> freq;  // count value -> number of true species with it
    Count distinct = 0;
    Count q1 = 0;  // true-species singletons
    Count q2 = 0;
    Count errors = 0;
    Count total = 0;
};

bool bounded_rule_fires(const RunningSample& s, Count n, Count M, const StoppingPolicy& policy) {
    const BoundedConfig& cfg = policy.bounded;
    const double b = cfg.b_for(n);
    if (!(static_cast<double>(n) > b)) return false;
    const Count declared = M + s.errors;
    const double eps_corr = mcdiarmid_correction(n, declared, b, cfg.delta);
    // m_b >= number of unseen true species; skip the full sum while even that is too large.
    const double floor_value =
        bounded_dd_value(static_cast<double>(M - s.distinct), eps_corr, n, b, cfg.alpha);
    if (std::min(floor_value, 1.0) > policy.epsilon) return false;
    const double value = bounded_dd_value(s.m_b(n, M, b), eps_corr, n, b, cfg.alpha);
    return std::clamp(value, 0.0, 1.0) <= policy.epsilon;
}

bool unbounded_rule_fires(const RunningSample& s, Count n, const StoppingPolicy& policy) {
    if (n < 3) return false;
    try {
        return unbounded_bound(s.total, n, policy.unbounded).reported_value <= policy.epsilon;
    } catch (const DomainError&) {
        return false;
    }
}

}  // namespace

StoppingOutcome run_stopping(const PrevalenceModel& model, const StoppingPolicy& policy, double q,
                             SeededStream& rng) {
    policy.validate();
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("contamination rate q must be in [0,1]");

    const std::size_t M = model.alphabet_size();
    SequentialSampler sampler(model, q, rng);
    RunningSample s(M);

    StoppingOutcome out;
    Count n = 0;
    while (n < policy.n_max) {
        const auto& unit = sampler.next();
        ++n;
        for (std::size_t j : unit.present) s.add(j);
        s.add_errors(unit.errors);

        bool fire = false;
        switch (policy.kind) {
            case StoppingKind::mmax_bounded:
                fire = bounded_rule_fires(s, n, static_cast<Count>(M), policy);
                break;
            case StoppingKind::mmax_unbounded:
                fire = unbounded_rule_fires(s, n, policy);
                break;
            case StoppingKind::coverage: {
                const auto c = coverage_estimate(n, s.total, s.q1 + s.errors, s.q2);
                fire = c && *c > policy.coverage_target;
                break;
            }
        }
        if (fire) {
            out.stopped = true;
            break;
        }
    }

    out.n_stop = n;
    Count relevant = 0, missed = 0;
    const auto probs = model.probs();
    for (std::size_t j = 0; j < M; ++j) {
        if (probs[j] >= policy.relevance_threshold) {
            ++relevant;
            missed += s.counts[j] == 0;
        }
    }
    out.missed_fraction = relevant > 0 ? static_cast<double>(missed) / static_cast<double>(relevant) : 0.0;
    out.type1 = out.stopped && missed > 0;
    out.extra_species = s.errors;
    return out;
}

std::uint64_t stopping_stream_index(std::string_view scenario, std::string_view policy, double q, Count rep) {
    std::uint64_t h = stable_hash(scenario);
    h = combine64(h, stable_hash(policy));
    h = combine64(h, stable_hash(q));
    return combine64(h, static_cast<std::uint64_t>(rep));
}

std::vector<StoppingRow> stopping_experiment(const StoppingGrid& grid) {
    if (grid.reps < 1) throw DomainError("reps must be >= 1");
    const std::size_t S = grid.scenarios.size(), P = grid.policies.size(), Q = grid.qs.size();
    const std::size_t R = static_cast<std::size_t>(grid.reps);
    const std::size_t cells = S * P * Q;

    std::vector<StoppingOutcome> outcomes(cells * R);
    detail::parallel_for(outcomes.size(), grid.threads, [&](std::size_t task) {
        const std::size_t rep = task % R;
        const std::size_t cell = task / R;
        const std::size_t qi = cell % Q;
        const std::size_t pi = (cell / Q) % P;
        const std::size_t si = cell / (Q * P);
        const auto& sc = grid.scenarios[si];
        const auto& po = grid.policies[pi];
        SeededStream rng(grid.master_seed,
                         stopping_stream_index(sc.name, po.name, grid.qs[qi], static_cast<Count>(rep)));
        outcomes[task] = run_stopping(sc.model, po.policy, grid.qs[qi], rng);
    });

    std::vector<StoppingRow> rows;
    rows.reserve(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::size_t qi = cell % Q;
        const std::size_t pi = (cell / Q) % P;
        const std::size_t si = cell / (Q * P);
        detail::CompensatedSum n_stop, missed;
        Count type1 = 0, extra = 0, stopped = 0;
        for (std::size_t r = 0; r < R; ++r) {
            const auto& o = outcomes[cell * R + r];
            n_stop.add(static_cast<double>(o.n_stop));
            missed.add(o.missed_fraction);
            type1 += o.type1;
            extra += o.extra_species;
            stopped += o.stopped;
        }
        const double reps = static_cast<double>(R);
        rows.push_back({grid.scenarios[si].name, grid.policies[pi].name, grid.qs[qi], grid.reps,
                        n_stop.value() / reps, missed.value() / reps, static_cast<double>(type1) / reps,
                        static_cast<double>(extra) / reps, static_cast<double>(stopped) / reps});
    }
    return rows;
}

std::vector<NamedModel> default_stopping_scenarios(std::size_t M) {
    std::vector<NamedModel> out;
    out.push_back({"truncgeom_0.05", make_prevalences(PrevalenceKind::truncated_geometric, 0.05, M)});
    out.push_back({"homogeneous_0.05", make_prevalences(PrevalenceKind::homogeneous, 1.0 / 0.05, M)});
    out.push_back({"homogeneous_0.006", make_prevalences(PrevalenceKind::homogeneous, 1.0 / 0.006, M)});
    out.push_back({"zipf_1.05", make_prevalences(PrevalenceKind::zipf, 1.05, M)});
    return out;
}

std::vector<double> default_contamination_grid() { return {0.0, 1e-4, 5e-4, 1e-3, 2.5e-3, 5e-3}; }

}  // namespace mmax
