#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmax {

using Count = std::int64_t;

enum class PrevalenceKind { zipf, geometric, homogeneous, truncated_geometric, explicit_probs };

std::string_view to_string(PrevalenceKind kind);
PrevalenceKind parse_prevalence_kind(std::string_view name);

// Per-species incidence probabilities p_1..p_M together with the recipe that
// produced them. Immutable after construction.
class PrevalenceModel {
public:
    // Takes ownership of an explicit probability vector; every entry must lie in [0, 1].
    static PrevalenceModel from_probs(std::vector<double> probs);

    PrevalenceModel(PrevalenceKind kind, double param, std::vector<double> probs);

    PrevalenceKind kind() const noexcept { return kind_; }
    double param() const noexcept { return param_; }
    std::size_t alphabet_size() const noexcept { return probs_.size(); }
    std::span<const double> probs() const noexcept { return probs_; }
    double prob(std::size_t j) const { return probs_.at(j); }

    // S = sum_j p_j, cached at construction.
    double total_mass() const noexcept { return total_mass_; }

private:
    PrevalenceKind kind_;
    double param_;
    std::vector<double> probs_;
    double total_mass_;
};

// Per-species counts N_j out of n sampling units.
class IncidenceSample {
public:
    IncidenceSample(Count n, std::vector<std::string> species, std::vector<Count> counts,
                    std::optional<Count> declared_M = std::nullopt);

    // Simulated sample: species are named "s1".."sK" in order.
    static IncidenceSample from_counts(Count n, std::vector<Count> counts,
                                       std::optional<Count> declared_M = std::nullopt);

    Count n() const noexcept { return n_; }
    std::span<const std::string> species() const noexcept { return species_; }
    std::span<const Count> counts() const noexcept { return counts_; }
    std::optional<Count> declared_M() const noexcept { return declared_M_; }

    std::size_t size() const noexcept { return counts_.size(); }
    Count total_incidences() const noexcept { return total_; }
    Count distinct() const noexcept { return distinct_; }

    IncidenceSample with_declared_M(std::optional<Count> M) const;

private:
    struct Trusted {};
    IncidenceSample(Trusted, Count n, std::vector<std::string> species, std::vector<Count> counts,
                    std::optional<Count> declared_M);
    void validate_and_cache(bool check_unique_ids);

    Count n_;
    std::vector<std::string> species_;
    std::vector<Count> counts_;
    std::optional<Count> declared_M_;
    Count total_ = 0;
    Count distinct_ = 0;
};

// Dense n x M presence/absence matrix, row-major (rows are sampling units).
class IncidenceMatrix {
public:
    IncidenceMatrix() = default;
    IncidenceMatrix(std::size_t rows, std::vector<std::string> species);
    IncidenceMatrix(std::size_t rows, std::vector<std::string> species, std::vector<std::uint8_t> cells);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return species_.size(); }
    std::span<const std::string> species() const noexcept { return species_; }
    std::span<const std::uint8_t> cells() const noexcept { return cells_; }

    bool at(std::size_t row, std::size_t col) const { return cells_[row * cols() + col] != 0; }
    void set(std::size_t row, std::size_t col, bool value) { cells_[row * cols() + col] = value ? 1 : 0; }

    std::vector<Count> column_sums() const;
    Count ones() const;

    IncidenceSample to_sample(std::optional<Count> declared_M = std::nullopt) const;

private:
    std::size_t rows_ = 0;
    std::vector<std::string> species_;
    std::vector<std::uint8_t> cells_;
};

struct SampleStats {
    Count n = 0;
    Count total_incidences = 0;  // U = sum_j N_j
    Count distinct = 0;
    std::optional<Count> unseen;  // declared_M - distinct, only when M is declared
    Count singletons = 0;         // Q1
    Count doubletons = 0;         // Q2
    std::vector<double> p_hat;    // aligned with sample.species()
};

SampleStats sample_stats(const IncidenceSample& sample);

enum class BoundMethod { bonferroni, worst_case, bounded_dd, unbounded_rnorm, prop1_oracle };

std::string_view to_string(BoundMethod method);

// Result of an upper confidence bound computation for M_max.
struct BoundEstimate {
    BoundMethod method = BoundMethod::bonferroni;
    double alpha = 0.05;
    std::optional<double> delta;  // bounded_dd only
    std::optional<double> beta;   // unbounded_rnorm only
    double raw_value = 0.0;
    double reported_value = 0.0;  // min(raw_value, 1)
    std::map<std::string, double> diagnostics;
    std::vector<std::string> warnings;
};

BoundEstimate make_estimate(BoundMethod method, double alpha, double raw_value,
                            std::optional<double> delta = std::nullopt,
                            std::optional<double> beta = std::nullopt);

}  // namespace mmax
