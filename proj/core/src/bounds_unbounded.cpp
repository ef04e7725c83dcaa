#include "mmax/bounds_unbounded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mmax/error.hpp"

namespace mmax {

void UnboundedConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
    if (!(beta > 0.0 && beta < alpha)) throw DomainError("beta must be in (0, alpha)");
}

double u_r(Count n, double r, double S, double level) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(r >= 1.0)) throw DomainError("r must be >= 1");
    if (!(S > 0.0)) throw DomainError("total mass S must be > 0");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("level must be in (0,1)");
    const double nn = static_cast<double>(n);
    const double rm1 = r - 1.0;
    double log_value = std::log(S / level) / r;
    if (rm1 > 0.0) log_value += (rm1 / r) * std::log(rm1 / (nn + rm1));
    log_value -= (nn / r) * std::log1p(rm1 / nn);
    return std::exp(log_value);
}

double oracle_r_star(Count n, double S, double level) {
    if (n < 3) throw DomainError("r* needs n >= 3");
    if (!(S > 0.0)) throw DomainError("total mass S must be > 0");
    if (!(level > 0.0)) throw DomainError("level must be > 0");
    const double ln = std::log(static_cast<double>(n));
    return std::log(S / level) + ln - std::log(ln);
}

double total_mass_ucb(double s_hat, Count n, double beta) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must be in (0,1)");
    const double c = std::log(1.0 / beta) / (2.0 * static_cast<double>(n));
    const double root = std::sqrt(c) + std::sqrt(c + s_hat);
    return root * root;
}

double total_mass_ucb(const IncidenceSample& sample, double beta) {
    const double s_hat = static_cast<double>(sample.total_incidences()) / static_cast<double>(sample.n());
    return total_mass_ucb(s_hat, sample.n(), beta);
}

double total_mass_lcb(double s_hat, Count n, double beta) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must be in (0,1)");
    const double c = std::log(1.0 / beta) / (2.0 * static_cast<double>(n));
    const double root = std::max(0.0, std::sqrt(s_hat + c) - std::sqrt(c));
    return root * root;
}

bool condition_check(Count n, double r) {
    if (n < 3) throw DomainError("condition needs n >= 3");
    if (!(r > 1.0)) throw DomainError("condition needs r > 1");
    return (r - 1.0) + std::log(r - 1.0) >= 1.0 + std::log(std::log(static_cast<double>(n)));
}

double u_r_asymptotic(Count n, double r, double S, double level) {
    return r / (std::exp(1.0) * static_cast<double>(n)) * std::pow(S / level, 1.0 / r);
}

BoundEstimate unbounded_bound(Count total_incidences, Count n, const UnboundedConfig& cfg) {
    cfg.validate();
    if (n < 3) throw DomainError("unbounded bound needs n >= 3");
    if (total_incidences < 0) throw DomainError("total incidences must be >= 0");
    const double s_hat = static_cast<double>(total_incidences) / static_cast<double>(n);
    const double level = cfg.alpha - cfg.beta;
    const double s_star = total_mass_ucb(s_hat, n, cfg.beta);
    const double r_star = oracle_r_star(n, s_star, level);
    if (r_star < 1.0)
        throw DomainError("degenerate R* = " + std::to_string(r_star) + " < 1 (n or S too small)");

    auto est = make_estimate(BoundMethod::unbounded_rnorm, cfg.alpha, u_r(n, r_star, s_star, level),
                             std::nullopt, cfg.beta);

    const double s_lcb = total_mass_lcb(s_hat, n, cfg.beta);
    double r_check = -std::numeric_limits<double>::infinity();
    bool condition_ok = false;
    if (s_lcb > 0.0) {
        r_check = oracle_r_star(n, s_lcb, level);
        condition_ok = r_check > 1.0 && condition_check(n, r_check);
    }

    est.diagnostics["S_hat"] = s_hat;
    est.diagnostics["S_star"] = s_star;
    est.diagnostics["R_star"] = r_star;
    est.diagnostics["S_lcb"] = s_lcb;
    est.diagnostics["r_check"] = r_check;
    est.diagnostics["condition_ok"] = condition_ok ? 1.0 : 0.0;
    est.diagnostics["level"] = 1.0 - cfg.alpha;
    est.diagnostics["asymptotic"] = u_r_asymptotic(n, r_star, s_star, level);
    if (!condition_ok)
        est.warnings.push_back("r* condition not verified at the lower confidence bound for S");
    return est;
}

BoundEstimate unbounded_bound(const IncidenceSample& sample, const UnboundedConfig& cfg) {
    return unbounded_bound(sample.total_incidences(), sample.n(), cfg);
}

double expected_unseen_r_mass(std::span<const double> probs, Count n, double r) {
    double sum = 0.0;
    for (double p : probs)
        if (p > 0.0) sum += std::pow(p, r) * std::pow(1.0 - p, static_cast<double>(n));
    return sum;
}

ImpossibilityDemo worstcase_impossibility_demo(Count n, double alpha, double candidate_U, Count certain) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
    if (!(candidate_U > 0.0 && candidate_U < 1.0)) throw DomainError("candidate U must be in (0,1)");
    if (certain < 0) throw DomainError("certain species count must be >= 0");

    const double nn = static_cast<double>(n);
    const double c = 0.5 * (1.0 + 1.0 / alpha);
    const double log_keep = std::log1p(-c * alpha);  // log(1 - c alpha) < 0
    // Per-species probability of staying unseen when p = U.
    const double w = std::exp(nn * std::log1p(-candidate_U));
    if (!(w > 0.0)) throw DomainError("candidate U too close to 1 for this n");

    auto x_for = [&](double k) { return -std::expm1(std::log(-std::expm1(log_keep / k)) / nn); };
    double k = std::max(1.0, std::ceil(log_keep / std::log1p(-w)));
    while (x_for(k) < candidate_U) k += 1.0;
    constexpr double kMaxSpecies = 1e7;
    if (k > kMaxSpecies) throw DomainError("construction needs more than 1e7 adversarial species");

    ImpossibilityDemo demo{PrevalenceModel::from_probs({1.0})};
    demo.c = c;
    demo.x = x_for(k);
    demo.adversarial = static_cast<Count>(k);
    demo.certain = certain;

    std::vector<double> probs(static_cast<std::size_t>(certain), 1.0);
    probs.insert(probs.end(), static_cast<std::size_t>(k), demo.x);
    demo.p_star = PrevalenceModel::from_probs(std::move(probs));

    const double unseen_one = std::exp(nn * std::log1p(-demo.x));
    demo.exceed_prob = -std::expm1(k * std::log1p(-unseen_one));
    return demo;
}

}  // namespace mmax
