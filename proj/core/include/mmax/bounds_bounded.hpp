#pragma once

#include <variant>

#include "mmax/model.hpp"

namespace mmax {

// b = log(n) (the default) or a fixed b >= 1.
struct LogNRule {};
struct FixedB {
    double b = 1.0;
};
using BRule = std::variant<LogNRule, FixedB>;

struct BoundedConfig {
    double alpha = 0.05;
    double delta = 0.0005;  // 0.01 * alpha
    BRule b_rule = LogNRule{};

    static BoundedConfig with_defaults(double alpha) { return {alpha, 0.01 * alpha, LogNRule{}}; }

    // Throws DomainError unless alpha, delta in (0,1) and alpha + delta < 1.
    void validate() const;
    double b_for(Count n) const;
};

// Rule-of-three with a Bonferroni correction over M categories: log(M/alpha)/n.
double bonferroni_bound(Count n, Count M, double alpha);

// Worst-case data-independent bound, r* = log(M/alpha):
// (M/alpha)^(1/r*) * r*/(r*+n) * exp(-n/(n+r*)).
double worst_case_bound(Count n, Count M, double alpha);

// (M/alpha)^(1/r) * r/(n+r) * (n/(n+r))^(n/r), the bound attained when all
// prevalences sit at r/(n+r).
double homogeneous_bound(Count n, Count M, double alpha, double r);

// m_b = sum over all M categories of (1 - N_j/n)^b; the M - distinct
// categories that were never observed contribute 1 each.
double m_b_statistic(const IncidenceSample& sample, Count M, double b);

// McDiarmid slack b * sqrt((M/n) log(1/delta)).
double mcdiarmid_correction(Count n, Count M, double b, double delta);

// log(m_b/alpha + eps_corr/alpha) / (n - b). Shared by the batch bound and the
// incremental evaluation in the stopping rules.
double bounded_dd_value(double m_b, double eps_corr, Count n, double b, double alpha);

// Data-dependent bounded-alphabet bound; level 1 - alpha - delta.
BoundEstimate bounded_dd_bound(const IncidenceSample& sample, Count M, const BoundedConfig& cfg);

enum class Prop1Form {
    coverage_exact,  // 1 - (1 - (1-alpha)^(1/k0))^(1/n)
    as_printed,      // 1 - (1 - alpha^(1/k0))^(1/n)
};

// Threshold of the least-favourable two-point rule with k0 free categories.
double prop1_threshold(Count n, Count k0, double alpha, Prop1Form form = Prop1Form::coverage_exact);

}  // namespace mmax
