#pragma once

#include <span>

#include "mmax/model.hpp"

namespace mmax {

// k0 categories at prevalence q, the remaining M - k0 at prevalence 1.
struct LeastFavourableFinite {
    Count n = 1;
    Count M = 1;
    Count k0 = 1;
    double q = 0.5;

    void validate() const;
    PrevalenceModel to_model() const;
};

// P(M_max <= T_K(N)) where T_K = 0 if every free category was seen and t otherwise.
double prop1_exact_coverage(const LeastFavourableFinite& model, double t);

// max{p_j : N_j = 0}, or 0 when every species was observed.
double mmax_exact(std::span<const double> probs, std::span<const Count> counts);
double mmax_exact(const PrevalenceModel& model, const IncidenceSample& sample);

// (1 - (1-eps)^n)^K with K = floor(S/eps); 1 when K = 0.
double phi_eps(Count n, double S, double eps);

// inf{eps > 0 : phi_eps(n, S, eps) >= 1 - alpha}.
double epsilon_star(Count n, double S, double alpha);

// (log(S/gamma) + log n - log log n)/n with gamma = -log(1-alpha).
double epsilon_star_asymptote(Count n, double S, double alpha);

}  // namespace mmax
