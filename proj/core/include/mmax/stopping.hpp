#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mmax/bounds_bounded.hpp"
#include "mmax/bounds_unbounded.hpp"
#include "mmax/model.hpp"
#include "mmax/rng.hpp"

namespace mmax {

enum class StoppingKind { mmax_bounded, mmax_unbounded, coverage };

std::string_view to_string(StoppingKind kind);
StoppingKind parse_stopping_kind(std::string_view name);

// Construct through the named factories; each kind only uses its own fields.
struct StoppingPolicy {
    StoppingKind kind = StoppingKind::mmax_unbounded;
    double epsilon = 0.005;          // M_max kinds: stop once the bound is <= epsilon
    double alpha = 0.05;             // M_max kinds
    double coverage_target = 0.99;   // coverage kind: stop once C_hat > target
    Count n_max = 10000;
    double relevance_threshold = 0.005;  // species with p_j >= this are "relevant"
    BoundedConfig bounded{};
    UnboundedConfig unbounded{};

    static StoppingPolicy mmax_bounded(double epsilon, double alpha, Count n_max);
    static StoppingPolicy mmax_bounded(double epsilon, const BoundedConfig& cfg, Count n_max);
    static StoppingPolicy mmax_unbounded(double epsilon, double alpha, Count n_max, double beta = 1e-5);
    static StoppingPolicy coverage(double target, double relevance_threshold, Count n_max);

    void validate() const;
};

struct StoppingOutcome {
    bool stopped = false;
    Count n_stop = 0;           // equals n_max when the rule never fired
    double missed_fraction = 0.0;
    bool type1 = false;         // stopped while a relevant species was unseen
    Count extra_species = 0;    // error species observed by n_stop
};

// Draws units one at a time (contaminated at rate q) and evaluates the policy
// after each unit.
StoppingOutcome run_stopping(const PrevalenceModel& model, const StoppingPolicy& policy, double q,
                             SeededStream& rng);

struct NamedModel {
    std::string name;
    PrevalenceModel model;
};

struct NamedPolicy {
    std::string name;
    StoppingPolicy policy;
};

struct StoppingGrid {
    std::vector<NamedModel> scenarios;
    std::vector<NamedPolicy> policies;
    std::vector<double> qs;
    Count reps = 200;
    std::uint64_t master_seed = 20240601;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct StoppingRow {
    std::string scenario;
    std::string policy;
    double q = 0.0;
    Count reps = 0;
    double mean_n_stop = 0.0;
    double mean_missed = 0.0;
    double type1_rate = 0.0;
    double mean_extra = 0.0;
    double stopped_rate = 0.0;
};

// Replicate r of (scenario, policy, q) uses stream index
// combine(hash(scenario), hash(policy), hash(q), r), so rows do not depend on
// grid composition or execution order.
std::uint64_t stopping_stream_index(std::string_view scenario, std::string_view policy, double q,
                                    Count rep);

std::vector<StoppingRow> stopping_experiment(const StoppingGrid& grid);

// The four metabarcoding-like communities (M = 1500 by default):
// Zipf(1.05), homogeneous 0.006 and 0.05, truncated geometric a = 0.05.
std::vector<NamedModel> default_stopping_scenarios(std::size_t M = 1500);
std::vector<double> default_contamination_grid();

}  // namespace mmax
