#include "mmax/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "mmax/error.hpp"

namespace mmax {

void LeastFavourableFinite::validate() const {
    if (n < 1) throw DomainError("n must be >= 1");
    if (k0 < 1 || k0 > M) throw DomainError("k0 must be in [1, M]");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must be in (0,1)");
}

PrevalenceModel LeastFavourableFinite::to_model() const {
    validate();
    std::vector<double> probs(static_cast<std::size_t>(M), 1.0);
    std::fill_n(probs.begin(), k0, q);
    return PrevalenceModel::from_probs(std::move(probs));
}

double prop1_exact_coverage(const LeastFavourableFinite& model, double t) {
    model.validate();
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("t must be in [0,1)");
    if (model.q <= t) return 1.0;
    const double all_free_seen = -std::expm1(static_cast<double>(model.n) * std::log1p(-model.q));
    return std::pow(all_free_seen, static_cast<double>(model.k0));
}

double mmax_exact(std::span<const double> probs, std::span<const Count> counts) {
    if (probs.size() != counts.size()) throw DomainError("probabilities and counts are not aligned");
    double best = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j)
        if (counts[j] == 0) best = std::max(best, probs[j]);
    return best;
}

double mmax_exact(const PrevalenceModel& model, const IncidenceSample& sample) {
    return mmax_exact(model.probs(), sample.counts());
}

double phi_eps(Count n, double S, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0,1)");
    if (!(S > 0.0)) throw DomainError("S must be > 0");
    const double K = std::floor(S / eps);
    if (K == 0.0) return 1.0;
    const double unseen = std::exp(static_cast<double>(n) * std::log1p(-eps));
    return std::exp(K * std::log1p(-unseen));
}

double epsilon_star(Count n, double S, double alpha) {
    if (n < 3) throw DomainError("epsilon_star needs n >= 3");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
    const double target = 1.0 - alpha;
    auto ok = [&](double eps) { return phi_eps(n, S, eps) >= target; };

    // K = floor(S/eps) jumps make a plain bisection on [0, 1) unreliable, so the
    // first satisfying cell of a geometric grid is located before bisecting.
    constexpr int kGrid = 10000;
    constexpr double kLo = 1e-8;
    const double hi_edge = std::nextafter(1.0, 0.0);
    const double ratio = std::pow(hi_edge / kLo, 1.0 / kGrid);
    if (ok(kLo)) return kLo;
    double lo = kLo;
    double hi = hi_edge;
    double x = kLo;
    for (int i = 1; i <= kGrid; ++i) {
        const double next = i == kGrid ? hi_edge : x * ratio;
        if (ok(next)) {
            lo = x;
            hi = next;
            break;
        }
        x = next;
    }
    if (!ok(hi)) return 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

double epsilon_star_asymptote(Count n, double S, double alpha) {
    const double gamma = -std::log1p(-alpha);
    const double ln = std::log(static_cast<double>(n));
    return (std::log(S / gamma) + ln - std::log(ln)) / static_cast<double>(n);
}

}  // namespace mmax
