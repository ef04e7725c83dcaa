#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmax/incidence_io.hpp"
#include "mmax/model.hpp"

namespace mmax::cli {

// Floats in CSV output carry 10 significant digits.
std::string format_float(double x);

struct BoundOptions {
    std::filesystem::path input;
    IncidenceFormat format = IncidenceFormat::dense;
    std::string method = "auto";  // bonferroni | worstcase | bounded | unbounded | auto
    double alpha = 0.05;
    std::optional<double> delta;  // default 0.01 * alpha
    double beta = 1e-5;
    std::optional<Count> M;
    std::optional<Count> n;
};

// Single JSON object describing the bound (and, for auto, both bounds and the
// regime recommendation).
std::string bound_json(const IncidenceSample& sample, const BoundOptions& opts);
std::string cmd_bound(const BoundOptions& opts);

struct IntervalOptions {
    PrevalenceKind scenario = PrevalenceKind::zipf;
    double param = 1.02;
    std::vector<Count> n_grid{2000};
    std::vector<Count> M_grid{10000};
    Count reps = 100;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct IntervalRow {
    Count n = 0;
    Count M = 0;
    Count rep = 0;
    std::string method;
    double value = 0.0;
    bool covered = false;
    double mmax_true = 0.0;
};

inline constexpr const char* kIntervalHeader = "scenario,param,n,M,rep,method,value,covered,mmax_true";

// Rows sorted by (grid point, rep, method in {bonferroni, bounded, unbounded}).
std::vector<IntervalRow> simulate_intervals(const IntervalOptions& opts);
void cmd_simulate_intervals(const IntervalOptions& opts, std::ostream& out);

struct RegimeOptions {
    Count n = 1000;
    Count M = 1500;
    double alpha = 0.05;
    Count reps = 100;
    std::uint64_t seed = 1;
    std::vector<double> zipf_gammas{1.05, 1.02, 1.0, 0.95, 0.9, 0.85, 0.825, 0.8, 0.75};
    std::vector<double> geometric_as{0.25, 0.1, 0.08, 0.05, 0.02};
    std::vector<double> homogeneous_cs{1000, 200, 100, 200.0 / 3.0, 50};
    double overshoot_gamma = 1.02;
    Count overshoot_n = 1000;
    Count overshoot_M = 5000;
    std::vector<Count> m_add{0, 10, 100, 1000, 10000, 100000, 1000000};
    unsigned threads = 0;
};

struct RegimeRow {
    std::string experiment;  // "regimes" or "overshoot"
    PrevalenceKind scenario = PrevalenceKind::zipf;
    double param = 0.0;
    Count n = 0;
    Count M = 0;       // true alphabet size
    Count M_add = 0;   // extra categories declared to the bounded bound
    double S_true = 0.0;
    double threshold = 0.0;
    double threshold_simplified = 0.0;
    double mean_bonferroni = 0.0;
    double mean_bounded = 0.0;
    double mean_unbounded = 0.0;
    Count reps = 0;
};

inline constexpr const char* kRegimeHeader =
    "experiment,scenario,param,n,M,M_add,S_true,threshold,threshold_simplified,"
    "mean_bonferroni,mean_bounded,mean_unbounded,reps";

std::vector<RegimeRow> compare_regimes(const RegimeOptions& opts);
void cmd_compare_regimes(const RegimeOptions& opts, std::ostream& out);

struct StoppingOptions {
    double epsilon = 0.005;
    double alpha = 0.05;
    double coverage_target = 0.99;
    Count reps = 200;
    Count n_max = 10000;
    Count M = 1500;
    std::vector<double> qs{0.0, 1e-4, 5e-4, 1e-3, 2.5e-3, 5e-3};
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

inline constexpr const char* kStoppingHeader =
    "scenario,policy,q,mean_nstop,mean_missed,type1,mean_extra";

void cmd_simulate_stopping(const StoppingOptions& opts, std::ostream& out);

struct DiagnoseOptions {
    std::filesystem::path input;
    IncidenceFormat format = IncidenceFormat::dense;
    std::optional<Count> M;
    std::optional<Count> n;
    double alpha = 0.05;
    std::size_t perms = 50;
    std::uint64_t seed = 1;
};

struct DiagnoseResult {
    std::string json;
    std::vector<double> curve;  // empty for the counts format
};

DiagnoseResult diagnose(const IncidenceMatrix& matrix, const DiagnoseOptions& opts);
DiagnoseResult diagnose(const IncidenceSample& sample, const DiagnoseOptions& opts);
DiagnoseResult cmd_diagnose(const DiagnoseOptions& opts);
void write_curve_csv(std::ostream& out, const std::vector<double>& curve);

struct GenerateOptions {
    PrevalenceKind scenario = PrevalenceKind::zipf;
    double param = 1.05;
    std::size_t M = 1500;
    std::size_t n = 1000;
    double q = 0.0;
    std::uint64_t seed = 1;
};

// Simulated (optionally contaminated) dense incidence matrix.
IncidenceMatrix cmd_generate(const GenerateOptions& opts);

}  // namespace mmax::cli
