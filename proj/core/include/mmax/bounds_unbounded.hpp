#pragma once

#include <cstddef>
#include <vector>

#include "mmax/model.hpp"

namespace mmax {

struct UnboundedConfig {
    double alpha = 0.05;
    double beta = 1e-5;

    // Throws DomainError unless 0 < beta < alpha < 1.
    void validate() const;
};

// r-norm bound valid for any summable prevalence sequence with total mass S:
//   (S/level)^(1/r) * ((r-1)/(n+r-1))^((r-1)/r) * (n/(n+r-1))^(n/r),
// with 0^0 = 1 at r = 1. Evaluated in log space.
double u_r(Count n, double r, double S, double level);

// log(S/level) + log n - log log n; requires n >= 3.
double oracle_r_star(Count n, double S, double level);

// Upper confidence bound for S from S_hat = U/n, P(S > S*) <= beta:
//   (sqrt(log(1/beta)/(2n)) + sqrt(log(1/beta)/(2n) + S_hat))^2.
double total_mass_ucb(const IncidenceSample& sample, double beta);
double total_mass_ucb(double s_hat, Count n, double beta);

// Mirrored lower bound (max{0, sqrt(S_hat + c) - sqrt(c)})^2, c = log(1/beta)/(2n).
double total_mass_lcb(double s_hat, Count n, double beta);

// (r-1) + log(r-1) >= 1 + log log n.
bool condition_check(Count n, double r);

// Large-r approximation (r/(e n)) (S/level)^(1/r); diagnostic only.
double u_r_asymptotic(Count n, double r, double S, double level);

// Fully data-dependent unbounded-alphabet bound at level 1 - alpha.
BoundEstimate unbounded_bound(const IncidenceSample& sample, const UnboundedConfig& cfg);
BoundEstimate unbounded_bound(Count total_incidences, Count n, const UnboundedConfig& cfg);

// sum_j p_j^r (1-p_j)^n = E[sum_{j: N_j = 0} p_j^r].
double expected_unseen_r_mass(std::span<const double> probs, Count n, double r);

// Adversarial model defeating a data-independent candidate bound U.
struct ImpossibilityDemo {
    PrevalenceModel p_star;
    double c = 0.0;             // exceedance multiplier in (1, 1/alpha)
    double x = 0.0;             // prevalence of the adversarial species, x >= U
    Count adversarial = 0;      // number of species at x
    Count certain = 0;          // number of species at probability 1
    double exceed_prob = 0.0;   // P(M_max >= U) = c * alpha, exact
};

// Builds `certain` species at probability 1 plus k species at
// x = 1 - (1 - (1 - c alpha)^(1/k))^(1/n), with k the smallest count giving x >= U,
// so that P(M_max >= U) = 1 - (1 - (1-x)^n)^k = c alpha > alpha.
ImpossibilityDemo worstcase_impossibility_demo(Count n, double alpha, double candidate_U,
                                               Count certain = 1);

}  // namespace mmax
