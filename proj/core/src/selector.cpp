#include "mmax/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmax/error.hpp"

namespace mmax {

double lambert_w0(double x) {
    constexpr double kBranch = -0.36787944117144233;  // -1/e
    if (std::isnan(x) || x < kBranch) throw DomainError("lambert_w0 needs x >= -1/e");
    if (x == 0.0) return 0.0;
    if (x == kBranch) return -1.0;
    if (std::isinf(x)) return x;

    double w;
    if (x < -0.25) {
        // Series around the branch point.
        const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 3.0) {
        w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    // Halley iteration.
    for (int it = 0; it < 64; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
    }
    return w;
}

double heuristic_threshold(Count n, Count M, double alpha, bool simplified) {
    if (n < 1 || M < 1) throw DomainError("n and M must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
    const double ratio = static_cast<double>(M) / static_cast<double>(n);
    if (simplified) return ratio * std::log(20.0 * static_cast<double>(M));
    return (-std::log1p(-alpha) / alpha) * ratio * std::log(static_cast<double>(M) / alpha);
}

namespace {

double inversion_target(double S, Count n, double alpha) {
    if (!(S >= 0.0)) throw DomainError("S must be >= 0");
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
    return S * static_cast<double>(n) * alpha / -std::log1p(-alpha);
}

}  // namespace

double threshold_alphabet_size(double S, Count n, double alpha) {
    const double y = inversion_target(S, n, alpha);
    auto f = [alpha](double M) { return M * std::log(M / alpha); };
    double lo = alpha;
    double hi = std::max(2.0 * alpha, 1.0);
    while (f(hi) < y) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double threshold_alphabet_size_lambert(double S, Count n, double alpha) {
    const double y = inversion_target(S, n, alpha);
    if (y == 0.0) return alpha;
    return y / lambert_w0(y / alpha);
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::bounded: return "bounded";
        case Regime::unbounded: return "unbounded";
        case Regime::indifferent: return "indifferent";
    }
    return "unknown";
}

RegimeRecommendation recommend_regime(const IncidenceSample& sample, std::optional<Count> M, double alpha) {
    RegimeRecommendation rec;
    const Count n = sample.n();
    rec.s_hat = static_cast<double>(sample.total_incidences()) / static_cast<double>(n);
    rec.alphabet_size_at_threshold = threshold_alphabet_size(rec.s_hat, n, alpha);
    rec.lambert_rule_value = lambert_w0(-std::log1p(-alpha) * rec.s_hat * static_cast<double>(n) / alpha);
    if (!M) {
        rec.regime = Regime::unbounded;
        rec.reason = "no alphabet size";
        return rec;
    }
    const double thr = heuristic_threshold(n, *M, alpha, false);
    rec.threshold = thr;
    rec.threshold_simplified = heuristic_threshold(n, *M, alpha, true);
    if (rec.s_hat < thr * (1.0 - kIndifferenceBand)) {
        rec.regime = Regime::unbounded;
        rec.reason = "S_hat below threshold";
    } else if (rec.s_hat > thr * (1.0 + kIndifferenceBand)) {
        rec.regime = Regime::bounded;
        rec.reason = "S_hat above threshold";
    } else {
        rec.regime = Regime::indifferent;
        rec.reason = "S_hat within 5% of threshold";
    }
    return rec;
}

}  // namespace mmax
