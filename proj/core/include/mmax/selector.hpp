#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mmax/model.hpp"

namespace mmax {

// Principal branch W0 of the Lambert W function, x >= -1/e.
double lambert_w0(double x);

// Total-mass threshold below which the unbounded bound is preferred:
//   full:       (-log(1-alpha)/alpha) (M/n) log(M/alpha)
//   simplified: (M/n) log(20 M)
double heuristic_threshold(Count n, Count M, double alpha, bool simplified = false);

// Alphabet size at which the full threshold equals S, i.e. the root of
//   M log(M/alpha) = S n alpha / (-log(1-alpha)).
// Bisection on the increasing map M -> M log(M/alpha) for M >= alpha.
double threshold_alphabet_size(double S, Count n, double alpha);

// Same root via M = y / W0(y/alpha), y = S n alpha / (-log(1-alpha)).
double threshold_alphabet_size_lambert(double S, Count n, double alpha);

enum class Regime { bounded, unbounded, indifferent };

std::string_view to_string(Regime regime);

inline constexpr double kIndifferenceBand = 0.05;

struct RegimeRecommendation {
    Regime regime = Regime::unbounded;
    double s_hat = 0.0;
    std::optional<double> threshold;
    std::optional<double> threshold_simplified;
    double alphabet_size_at_threshold = 0.0;
    double lambert_rule_value = 0.0;  // W(-log(1-alpha) S n / alpha)
    std::string reason;
};

// Compares S_hat with the full threshold, with a +-5% indifference band.
RegimeRecommendation recommend_regime(const IncidenceSample& sample, std::optional<Count> M,
                                      double alpha);

}  // namespace mmax
