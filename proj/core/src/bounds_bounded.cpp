#include "mmax/bounds_bounded.hpp"

#include <cmath>
#include <string>

#include "mmax/error.hpp"

namespace mmax {
namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
}

void check_nM(Count n, Count M) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (M < 1) throw DomainError("M must be >= 1");
}

}  // namespace

void BoundedConfig::validate() const {
    check_alpha(alpha);
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must be in (0,1)");
    if (!(alpha + delta < 1.0)) throw DomainError("alpha + delta must be < 1");
    if (const auto* fixed = std::get_if<FixedB>(&b_rule); fixed && !(fixed->b >= 1.0))
        throw DomainError("explicit b must be >= 1");
}

double BoundedConfig::b_for(Count n) const {
    if (const auto* fixed = std::get_if<FixedB>(&b_rule)) return fixed->b;
    return std::log(static_cast<double>(n));
}

double bonferroni_bound(Count n, Count M, double alpha) {
    check_nM(n, M);
    check_alpha(alpha);
    return std::log(static_cast<double>(M) / alpha) / static_cast<double>(n);
}

double worst_case_bound(Count n, Count M, double alpha) {
    check_nM(n, M);
    check_alpha(alpha);
    const double r = std::log(static_cast<double>(M) / alpha);
    const double nn = static_cast<double>(n);
    // (M/alpha)^(1/r) = e because r = log(M/alpha).
    return std::exp(1.0 - nn / (nn + r)) * r / (r + nn);
}

double homogeneous_bound(Count n, Count M, double alpha, double r) {
    check_nM(n, M);
    check_alpha(alpha);
    if (!(r >= 1.0)) throw DomainError("r must be >= 1");
    const double nn = static_cast<double>(n);
    const double log_value = std::log(static_cast<double>(M) / alpha) / r + std::log(r / (nn + r)) +
                             (nn / r) * std::log1p(-r / (nn + r));
    return std::exp(log_value);
}

double m_b_statistic(const IncidenceSample& sample, Count M, double b) {
    if (M < sample.distinct())
        throw DomainError("M = " + std::to_string(M) + " is below the " +
                          std::to_string(sample.distinct()) + " observed species");
    if (!(b >= 0.0)) throw DomainError("b must be >= 0");
    const double n = static_cast<double>(sample.n());
    double sum = static_cast<double>(M - sample.distinct());
    for (Count c : sample.counts())
        if (c > 0) sum += std::pow(1.0 - static_cast<double>(c) / n, b);
    return sum;
}

double mcdiarmid_correction(Count n, Count M, double b, double delta) {
    return b * std::sqrt(static_cast<double>(M) / static_cast<double>(n) * std::log(1.0 / delta));
}

double bounded_dd_value(double m_b, double eps_corr, Count n, double b, double alpha) {
    return std::log(m_b / alpha + eps_corr / alpha) / (static_cast<double>(n) - b);
}

BoundEstimate bounded_dd_bound(const IncidenceSample& sample, Count M, const BoundedConfig& cfg) {
    cfg.validate();
    check_nM(sample.n(), M);
    const Count n = sample.n();
    const double b = cfg.b_for(n);
    if (!(static_cast<double>(n) > b))
        throw DomainError("bounded bound needs n > b (n = " + std::to_string(n) + ")");
    const double m_b = m_b_statistic(sample, M, b);
    const double eps_corr = mcdiarmid_correction(n, M, b, cfg.delta);
    auto est = make_estimate(BoundMethod::bounded_dd, cfg.alpha,
                             bounded_dd_value(m_b, eps_corr, n, b, cfg.alpha), cfg.delta);
    est.diagnostics["m_b"] = m_b;
    est.diagnostics["eps_corr"] = eps_corr;
    est.diagnostics["b"] = b;
    est.diagnostics["M"] = static_cast<double>(M);
    est.diagnostics["level"] = 1.0 - cfg.alpha - cfg.delta;
    return est;
}

double prop1_threshold(Count n, Count k0, double alpha, Prop1Form form) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (k0 < 1) throw DomainError("k0 must be >= 1");
    check_alpha(alpha);
    const double base = form == Prop1Form::coverage_exact ? std::log1p(-alpha) : std::log(alpha);
    // a = 1 - exp(base/k0); t = 1 - a^(1/n)
    const double a = -std::expm1(base / static_cast<double>(k0));
    return -std::expm1(std::log(a) / static_cast<double>(n));
}

}  // namespace mmax
