#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mmax/model.hpp"
#include "mmax/rng.hpp"

namespace mmax {

// S_hat = (1/n) sum_j N_j.
double s_hat(const IncidenceSample& sample);

// Incidence-based sample coverage from singletons/doubletons:
//   C = 1 - (Q1/U) * ((n-1) Q1 / ((n-1) Q1 + 2 Q2)), clamped to [0, 1].
// Empty when U = 0 or n < 2.
std::optional<double> coverage_estimate(Count n, Count total_incidences, Count q1, Count q2);
std::optional<double> coverage_estimate(const IncidenceSample& sample);

inline constexpr std::string_view kCoverageFormula =
    "C = 1 - (Q1/U) * ((n-1)*Q1 / ((n-1)*Q1 + 2*Q2)), U = sum_j N_j, clamped to [0,1]";

inline constexpr std::size_t kDefaultPermutations = 50;
inline constexpr std::size_t kExhaustiveMaxUnits = 8;

// Mean number of distinct species among the first k units, k = 1..n, averaged
// over random unit orderings. All n! orderings are enumerated when n <= 8.
std::vector<double> accumulation_curve(const IncidenceMatrix& matrix, std::size_t n_perms,
                                       SeededStream& rng);

// Accumulation curve for one fixed unit ordering.
std::vector<Count> accumulation_for_order(const IncidenceMatrix& matrix,
                                          std::span<const std::size_t> order);

}  // namespace mmax
