#include "mmax/sampler.hpp"

#include <cmath>
#include <string>

#include "mmax/error.hpp"

namespace mmax {

PrevalenceModel make_prevalences(PrevalenceKind kind, double param, std::size_t M) {
    if (M < 1) throw DomainError("M must be >= 1");
    std::vector<double> probs(M);
    switch (kind) {
        case PrevalenceKind::zipf:
            if (!(param > 0.0)) throw DomainError("zipf exponent gamma must be > 0");
            for (std::size_t j = 1; j <= M; ++j) probs[j - 1] = std::pow(double(j + 1), -param);
            break;
        case PrevalenceKind::geometric:
            if (!(param > 0.0 && param < 1.0)) throw DomainError("geometric ratio a must be in (0,1)");
            for (std::size_t j = 1; j <= M; ++j) probs[j - 1] = std::pow(param, double(j));
            break;
        case PrevalenceKind::homogeneous:
            if (!(param >= 1.0)) throw DomainError("homogeneous c must be >= 1");
            for (auto& p : probs) p = 1.0 / param;
            break;
        case PrevalenceKind::truncated_geometric:
            if (!(param > 0.0 && param < 1.0))
                throw DomainError("truncated-geometric rate a must be in (0,1)");
            for (std::size_t j = 1; j <= M; ++j) probs[j - 1] = std::pow(1.0 - param, double(j - 1));
            break;
        case PrevalenceKind::explicit_probs:
            throw DomainError("explicit prevalences are built with PrevalenceModel::from_probs");
    }
    return PrevalenceModel(kind, param, std::move(probs));
}

IncidenceSample draw_sample(const PrevalenceModel& model, Count n, SeededStream& rng) {
    if (n < 1) throw DomainError("n must be >= 1");
    std::vector<Count> counts;
    counts.reserve(model.alphabet_size());
    for (double p : model.probs()) counts.push_back(rng.binomial(n, p));
    return IncidenceSample::from_counts(n, std::move(counts), static_cast<Count>(model.alphabet_size()));
}

IncidenceMatrix draw_incidence_matrix(const PrevalenceModel& model, std::size_t n, SeededStream& rng) {
    const std::size_t M = model.alphabet_size();
    std::vector<std::string> ids;
    ids.reserve(M);
    for (std::size_t j = 0; j < M; ++j) ids.push_back("s" + std::to_string(j + 1));
    IncidenceMatrix matrix(n, std::move(ids));
    const auto probs = model.probs();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < M; ++j) matrix.set(i, j, rng.bernoulli(probs[j]));
    return matrix;
}

ContaminationResult contaminate(const IncidenceMatrix& matrix, double q, SeededStream& rng) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("contamination rate q must be in [0,1]");
    const std::size_t rows = matrix.rows();
    const std::size_t cols = matrix.cols();

    std::vector<std::uint8_t> kept(matrix.cells().begin(), matrix.cells().end());
    std::vector<std::size_t> error_rows;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint8_t& cell = kept[i * cols + j];
            if (cell && rng.bernoulli(q)) {
                cell = 0;
                error_rows.push_back(i);
            }
        }
    }

    std::vector<std::string> ids(matrix.species().begin(), matrix.species().end());
    for (std::size_t e = 0; e < error_rows.size(); ++e) ids.push_back("err" + std::to_string(e + 1));
    IncidenceMatrix out(rows, std::move(ids));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (kept[i * cols + j]) out.set(i, j, true);
    for (std::size_t e = 0; e < error_rows.size(); ++e) out.set(error_rows[e], cols + e, true);

    return {std::move(out), static_cast<Count>(error_rows.size())};
}

SequentialSampler::SequentialSampler(const PrevalenceModel& model, double q, SeededStream& rng)
    : model_(&model), q_(q), rng_(&rng) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("contamination rate q must be in [0,1]");
    const auto probs = model.probs();
    for (std::size_t j = 0; j < probs.size(); ++j)
        if (probs[j] > 0.0) queue_.push({gap(j), j});
}

Count SequentialSampler::gap(std::size_t species) {
    const double p = model_->prob(species);
    if (p >= 1.0) return 1;
    // 1 + Geometric(p) failures by inversion; log1p keeps tiny p accurate.
    const double u = 1.0 - rng_->uniform();  // (0, 1]
    const double failures = std::floor(std::log(u) / std::log1p(-p));
    constexpr double kNever = 1e15;
    return 1 + static_cast<Count>(failures < kNever ? failures : kNever);
}

const SequentialSampler::Unit& SequentialSampler::next() {
    ++unit_;
    current_.present.clear();
    current_.errors = 0;
    while (!queue_.empty() && queue_.top().unit == unit_) {
        const Event ev = queue_.top();
        queue_.pop();
        if (q_ > 0.0 && rng_->bernoulli(q_))
            ++current_.errors;
        else
            current_.present.push_back(ev.species);
        queue_.push({unit_ + gap(ev.species), ev.species});
    }
    return current_;
}

}  // namespace mmax
