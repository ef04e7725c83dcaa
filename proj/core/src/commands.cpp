#include "mmax/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "mmax/bounds_bounded.hpp"
#include "mmax/bounds_unbounded.hpp"
#include "mmax/error.hpp"
#include "mmax/estimators.hpp"
#include "mmax/oracles.hpp"
#include "mmax/sampler.hpp"
#include "mmax/selector.hpp"
#include "mmax/stopping.hpp"
#include "parallel.hpp"

namespace mmax::cli {

using nlohmann::json;

std::string format_float(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

namespace {

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json estimate_json(const BoundEstimate& e) {
    json j;
    j["method"] = std::string(to_string(e.method));
    j["alpha"] = e.alpha;
    j["delta"] = opt_json(e.delta);
    j["beta"] = opt_json(e.beta);
    j["raw_value"] = e.raw_value;
    j["reported_value"] = e.reported_value;
    j["diagnostics"] = json::object();
    for (const auto& [k, v] : e.diagnostics) j["diagnostics"][k] = v;
    j["warnings"] = e.warnings;
    return j;
}

json recommendation_json(const RegimeRecommendation& r) {
    return {{"regime", std::string(to_string(r.regime))},
            {"s_hat", r.s_hat},
            {"threshold", opt_json(r.threshold)},
            {"threshold_simplified", opt_json(r.threshold_simplified)},
            {"alphabet_size_at_threshold", r.alphabet_size_at_threshold},
            {"lambert_rule_value", r.lambert_rule_value},
            {"reason", r.reason}};
}

Count require_M(const std::optional<Count>& M, const IncidenceSample& sample, std::string_view method) {
    if (!M) throw DomainError("method '" + std::string(method) + "' requires --M");
    if (*M < sample.distinct())
        throw DomainError("--M = " + std::to_string(*M) + " is smaller than the " +
                          std::to_string(sample.distinct()) + " distinct species observed");
    return *M;
}

BoundedConfig bounded_config(const BoundOptions& opts) {
    BoundedConfig cfg = BoundedConfig::with_defaults(opts.alpha);
    if (opts.delta) cfg.delta = *opts.delta;
    cfg.validate();
    return cfg;
}

BoundEstimate data_independent(BoundMethod method, const IncidenceSample& sample, Count M, double alpha) {
    const double raw = method == BoundMethod::bonferroni ? bonferroni_bound(sample.n(), M, alpha)
                                                         : worst_case_bound(sample.n(), M, alpha);
    BoundEstimate e = make_estimate(method, alpha, raw);
    e.diagnostics["M"] = static_cast<double>(M);
    e.diagnostics["n"] = static_cast<double>(sample.n());
    return e;
}

std::uint64_t interval_stream(const IntervalOptions& opts, Count n, Count M, Count rep) {
    std::uint64_t h = stable_hash(to_string(opts.scenario));
    h = combine64(h, stable_hash(opts.param));
    h = combine64(h, static_cast<std::uint64_t>(n));
    h = combine64(h, static_cast<std::uint64_t>(M));
    return combine64(h, static_cast<std::uint64_t>(rep));
}

// Shared by both sweeps: an overshoot configuration equal to a regimes
// configuration sees the same samples.
std::uint64_t regime_stream(PrevalenceKind kind, double param, Count n, Count rep) {
    std::uint64_t h = stable_hash(std::string_view("regimes"));
    h = combine64(h, stable_hash(to_string(kind)));
    h = combine64(h, static_cast<std::uint64_t>(n));
    h = combine64(h, stable_hash(param));
    return combine64(h, static_cast<std::uint64_t>(rep));
}

void require_positive(Count v, const char* name) {
    if (v < 1) throw DomainError(std::string(name) + " must be >= 1");
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
}

}  // namespace

std::string bound_json(const IncidenceSample& sample, const BoundOptions& opts) {
    require_alpha(opts.alpha);
    const std::optional<Count> M = opts.M ? opts.M : sample.declared_M();
    const UnboundedConfig ucfg{opts.alpha, opts.beta};

    json out;
    out["parameters"] = {{"alpha", opts.alpha},
                         {"delta", opts.delta.value_or(0.01 * opts.alpha)},
                         {"beta", opts.beta},
                         {"M", opt_json(M)},
                         {"n", sample.n()},
                         {"distinct", sample.distinct()},
                         {"total_incidences", sample.total_incidences()}};

    BoundEstimate chosen;
    if (opts.method == "bonferroni") {
        chosen = data_independent(BoundMethod::bonferroni, sample, require_M(M, sample, opts.method), opts.alpha);
    } else if (opts.method == "worstcase") {
        chosen = data_independent(BoundMethod::worst_case, sample, require_M(M, sample, opts.method), opts.alpha);
    } else if (opts.method == "bounded") {
        chosen = bounded_dd_bound(sample, require_M(M, sample, opts.method), bounded_config(opts));
    } else if (opts.method == "unbounded") {
        ucfg.validate();
        chosen = unbounded_bound(sample, ucfg);
    } else if (opts.method == "auto") {
        ucfg.validate();
        if (M) require_M(M, sample, opts.method);
        const RegimeRecommendation rec = recommend_regime(sample, M, opts.alpha);
        const BoundEstimate unb = unbounded_bound(sample, ucfg);
        out["recommendation"] = recommendation_json(rec);
        out["bounds"]["unbounded"] = estimate_json(unb);
        chosen = unb;
        if (M) {
            const BoundEstimate bdd = bounded_dd_bound(sample, *M, bounded_config(opts));
            out["bounds"]["bounded"] = estimate_json(bdd);
            // Inside the indifference band the bounds nearly coincide; the known M wins ties.
            if (rec.regime != Regime::unbounded) chosen = bdd;
        }
        out["rationale"] = rec.reason;
    } else {
        throw DomainError("unknown method '" + opts.method + "'");
    }

    out["method"] = opts.method == "auto" ? "auto" : std::string(to_string(chosen.method));
    out["selected"] = std::string(to_string(chosen.method));
    out["reported_value"] = chosen.reported_value;
    out["raw_value"] = chosen.raw_value;
    out["diagnostics"] = estimate_json(chosen)["diagnostics"];
    out["warnings"] = chosen.warnings;
    return out.dump(2);
}

std::string cmd_bound(const BoundOptions& opts) {
    return bound_json(parse_incidence(opts.input, opts.format, opts.n), opts);
}

std::vector<IntervalRow> simulate_intervals(const IntervalOptions& opts) {
    require_positive(opts.reps, "reps");
    require_alpha(opts.alpha);
    if (opts.n_grid.empty() || opts.M_grid.empty()) throw DomainError("n and M grids must be non-empty");
    for (Count n : opts.n_grid)
        if (n < 3) throw DomainError("every n must be >= 3");
    for (Count M : opts.M_grid) require_positive(M, "M");

    struct Point {
        Count n, M;
    };
    std::vector<Point> points;
    for (Count n : opts.n_grid)
        for (Count M : opts.M_grid) points.push_back({n, M});

    std::vector<PrevalenceModel> models;
    for (const auto& p : points) models.push_back(make_prevalences(opts.scenario, opts.param, static_cast<std::size_t>(p.M)));

    const std::size_t R = static_cast<std::size_t>(opts.reps);
    constexpr std::size_t kMethods = 3;
    std::vector<IntervalRow> rows(points.size() * R * kMethods);
    const BoundedConfig bcfg = BoundedConfig::with_defaults(opts.alpha);
    const UnboundedConfig ucfg{opts.alpha, 1e-5};

    detail::parallel_for(points.size() * R, opts.threads, [&](std::size_t task) {
        const std::size_t pi = task / R;
        const Count rep = static_cast<Count>(task % R);
        const auto [n, M] = points[pi];
        SeededStream rng(opts.seed, interval_stream(opts, n, M, rep));
        const IncidenceSample sample = draw_sample(models[pi], n, rng);
        const double truth = mmax_exact(models[pi], sample);
        const double values[kMethods] = {
            std::min(bonferroni_bound(n, M, opts.alpha), 1.0),
            bounded_dd_bound(sample, M, bcfg).reported_value,
            unbounded_bound(sample, ucfg).reported_value,
        };
        static constexpr const char* names[kMethods] = {"bonferroni", "bounded", "unbounded"};
        for (std::size_t k = 0; k < kMethods; ++k)
            rows[task * kMethods + k] = {n, M, rep, names[k], values[k], truth <= values[k], truth};
    });
    return rows;
}

void cmd_simulate_intervals(const IntervalOptions& opts, std::ostream& out) {
    const auto rows = simulate_intervals(opts);
    const std::string scenario(to_string(opts.scenario));
    const std::string param = format_float(opts.param);
    out << kIntervalHeader << '\n';
    for (const auto& r : rows)
        out << scenario << ',' << param << ',' << r.n << ',' << r.M << ',' << r.rep << ',' << r.method << ','
            << format_float(r.value) << ',' << (r.covered ? 1 : 0) << ',' << format_float(r.mmax_true) << '\n';
}

std::vector<RegimeRow> compare_regimes(const RegimeOptions& opts) {
    require_positive(opts.reps, "reps");
    require_alpha(opts.alpha);
    if (opts.n < 3 || opts.overshoot_n < 3) throw DomainError("n must be >= 3");
    require_positive(opts.M, "M");
    require_positive(opts.overshoot_M, "overshoot M");
    for (Count a : opts.m_add)
        if (a < 0) throw DomainError("M_add must be >= 0");

    const BoundedConfig bcfg = BoundedConfig::with_defaults(opts.alpha);
    const UnboundedConfig ucfg{opts.alpha, 1e-5};
    const std::size_t R = static_cast<std::size_t>(opts.reps);

    struct Config {
        PrevalenceKind kind;
        double param;
    };
    std::vector<Config> configs;
    for (double g : opts.zipf_gammas) configs.push_back({PrevalenceKind::zipf, g});
    for (double a : opts.geometric_as) configs.push_back({PrevalenceKind::geometric, a});
    for (double c : opts.homogeneous_cs) configs.push_back({PrevalenceKind::homogeneous, c});

    // Sweep 1: per-configuration mean bound lengths at (n, M).
    std::vector<PrevalenceModel> models;
    for (const auto& c : configs) models.push_back(make_prevalences(c.kind, c.param, static_cast<std::size_t>(opts.M)));
    std::vector<std::pair<double, double>> per_rep(configs.size() * R);
    detail::parallel_for(per_rep.size(), opts.threads, [&](std::size_t task) {
        const std::size_t ci = task / R;
        SeededStream rng(opts.seed, regime_stream(configs[ci].kind, configs[ci].param, opts.n, static_cast<Count>(task % R)));
        const IncidenceSample s = draw_sample(models[ci], opts.n, rng);
        per_rep[task] = {bounded_dd_bound(s, opts.M, bcfg).reported_value, unbounded_bound(s, ucfg).reported_value};
    });

    std::vector<RegimeRow> rows;
    const double thr = heuristic_threshold(opts.n, opts.M, opts.alpha, false);
    const double thr_s = heuristic_threshold(opts.n, opts.M, opts.alpha, true);
    const double bonf = std::min(bonferroni_bound(opts.n, opts.M, opts.alpha), 1.0);
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        detail::CompensatedSum b, u;
        for (std::size_t r = 0; r < R; ++r) {
            b.add(per_rep[ci * R + r].first);
            u.add(per_rep[ci * R + r].second);
        }
        rows.push_back({"regimes", configs[ci].kind, configs[ci].param, opts.n, opts.M, 0, models[ci].total_mass(),
                        thr, thr_s, bonf, b.value() / double(R), u.value() / double(R), opts.reps});
    }

    // Sweep 2: the same samples evaluated with M inflated by each M_add.
    const PrevalenceModel over = make_prevalences(PrevalenceKind::zipf, opts.overshoot_gamma,
                                                  static_cast<std::size_t>(opts.overshoot_M));
    const std::size_t A = opts.m_add.size();
    std::vector<double> bounded_vals(R * A), unbounded_vals(R);
    detail::parallel_for(R, opts.threads, [&](std::size_t rep) {
        SeededStream rng(opts.seed, regime_stream(PrevalenceKind::zipf, opts.overshoot_gamma, opts.overshoot_n,
                                                  static_cast<Count>(rep)));
        const IncidenceSample s = draw_sample(over, opts.overshoot_n, rng);
        unbounded_vals[rep] = unbounded_bound(s, ucfg).reported_value;
        for (std::size_t a = 0; a < A; ++a)
            bounded_vals[rep * A + a] = bounded_dd_bound(s, opts.overshoot_M + opts.m_add[a], bcfg).reported_value;
    });
    detail::CompensatedSum u;
    for (double v : unbounded_vals) u.add(v);
    for (std::size_t a = 0; a < A; ++a) {
        const Count declared = opts.overshoot_M + opts.m_add[a];
        detail::CompensatedSum b;
        for (std::size_t r = 0; r < R; ++r) b.add(bounded_vals[r * A + a]);
        rows.push_back({"overshoot", PrevalenceKind::zipf, opts.overshoot_gamma, opts.overshoot_n, opts.overshoot_M,
                        opts.m_add[a], over.total_mass(),
                        heuristic_threshold(opts.overshoot_n, declared, opts.alpha, false),
                        heuristic_threshold(opts.overshoot_n, declared, opts.alpha, true),
                        std::min(bonferroni_bound(opts.overshoot_n, declared, opts.alpha), 1.0), b.value() / double(R),
                        u.value() / double(R), opts.reps});
    }
    return rows;
}

void cmd_compare_regimes(const RegimeOptions& opts, std::ostream& out) {
    out << kRegimeHeader << '\n';
    for (const auto& r : compare_regimes(opts))
        out << r.experiment << ',' << to_string(r.scenario) << ',' << format_float(r.param) << ',' << r.n << ','
            << r.M << ',' << r.M_add << ',' << format_float(r.S_true) << ',' << format_float(r.threshold) << ','
            << format_float(r.threshold_simplified) << ',' << format_float(r.mean_bonferroni) << ','
            << format_float(r.mean_bounded) << ',' << format_float(r.mean_unbounded) << ',' << r.reps << '\n';
}

void cmd_simulate_stopping(const StoppingOptions& opts, std::ostream& out) {
    require_positive(opts.M, "M");
    StoppingGrid grid;
    grid.scenarios = default_stopping_scenarios(static_cast<std::size_t>(opts.M));
    grid.policies = {
        {"bounded", StoppingPolicy::mmax_bounded(opts.epsilon, opts.alpha, opts.n_max)},
        {"unbounded", StoppingPolicy::mmax_unbounded(opts.epsilon, opts.alpha, opts.n_max)},
        {"coverage", StoppingPolicy::coverage(opts.coverage_target, opts.epsilon, opts.n_max)},
    };
    grid.qs = opts.qs;
    grid.reps = opts.reps;
    grid.master_seed = opts.seed;
    grid.threads = opts.threads;
    const auto rows = stopping_experiment(grid);
    out << kStoppingHeader << '\n';
    for (const auto& r : rows)
        out << r.scenario << ',' << r.policy << ',' << format_float(r.q) << ',' << format_float(r.mean_n_stop) << ','
            << format_float(r.mean_missed) << ',' << format_float(r.type1_rate) << ',' << format_float(r.mean_extra)
            << '\n';
}

namespace {

json sample_summary(const IncidenceSample& sample, const DiagnoseOptions& opts) {
    require_alpha(opts.alpha);
    const std::optional<Count> M = opts.M ? opts.M : sample.declared_M();
    if (M) require_M(M, sample, "diagnose");
    const SampleStats st = sample_stats(sample);
    const RegimeRecommendation rec = recommend_regime(sample, M, opts.alpha);
    json j;
    j["n"] = st.n;
    j["M"] = opt_json(M);
    j["alpha"] = opts.alpha;
    j["distinct"] = st.distinct;
    j["total_incidences"] = st.total_incidences;
    j["S_hat"] = rec.s_hat;
    j["Q1"] = st.singletons;
    j["Q2"] = st.doubletons;
    j["coverage"] = opt_json(coverage_estimate(sample));
    j["coverage_formula"] = std::string(kCoverageFormula);
    j["threshold"] = opt_json(rec.threshold);
    j["threshold_simplified"] = opt_json(rec.threshold_simplified);
    j["recommendation"] = recommendation_json(rec);
    return j;
}

}  // namespace

DiagnoseResult diagnose(const IncidenceMatrix& matrix, const DiagnoseOptions& opts) {
    if (opts.perms < 1) throw DomainError("perms must be >= 1");
    const IncidenceSample sample = matrix.to_sample(opts.M);
    json j = sample_summary(sample, opts);
    SeededStream rng(opts.seed, stable_hash(std::string_view("diagnose")));
    DiagnoseResult out;
    out.curve = accumulation_curve(matrix, opts.perms, rng);
    j["curve_points"] = out.curve.size();
    j["permutations"] = matrix.rows() <= kExhaustiveMaxUnits ? json("exhaustive") : json(opts.perms);
    out.json = j.dump(2);
    return out;
}

DiagnoseResult diagnose(const IncidenceSample& sample, const DiagnoseOptions& opts) {
    json j = sample_summary(sample, opts);
    j["curve_points"] = 0;
    return {j.dump(2), {}};
}

DiagnoseResult cmd_diagnose(const DiagnoseOptions& opts) {
    if (opts.format == IncidenceFormat::counts) return diagnose(parse_incidence(opts.input, opts.format, opts.n), opts);
    return diagnose(parse_incidence_matrix(opts.input, opts.format), opts);
}

void write_curve_csv(std::ostream& out, const std::vector<double>& curve) {
    out << "k,mean_distinct\n";
    for (std::size_t k = 0; k < curve.size(); ++k) out << k + 1 << ',' << format_float(curve[k]) << '\n';
}

IncidenceMatrix cmd_generate(const GenerateOptions& opts) {
    if (opts.n < 1) throw DomainError("n must be >= 1");
    const PrevalenceModel model = make_prevalences(opts.scenario, opts.param, opts.M);
    SeededStream rng(opts.seed, stable_hash(std::string_view("generate")));
    IncidenceMatrix matrix = draw_incidence_matrix(model, opts.n, rng);
    if (opts.q > 0.0) return contaminate(matrix, opts.q, rng).matrix;
    if (opts.q < 0.0) throw DomainError("contamination rate q must be in [0,1]");
    return matrix;
}

}  // namespace mmax::cli
