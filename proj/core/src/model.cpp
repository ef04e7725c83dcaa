#include "mmax/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mmax/error.hpp"

namespace mmax {

std::string_view to_string(PrevalenceKind kind) {
    switch (kind) {
        case PrevalenceKind::zipf: return "zipf";
        case PrevalenceKind::geometric: return "geometric";
        case PrevalenceKind::homogeneous: return "homogeneous";
        case PrevalenceKind::truncated_geometric: return "truncated-geometric";
        case PrevalenceKind::explicit_probs: return "explicit";
    }
    return "unknown";
}

PrevalenceKind parse_prevalence_kind(std::string_view name) {
    if (name == "zipf") return PrevalenceKind::zipf;
    if (name == "geometric") return PrevalenceKind::geometric;
    if (name == "homogeneous") return PrevalenceKind::homogeneous;
    if (name == "truncated-geometric" || name == "truncated_geometric")
        return PrevalenceKind::truncated_geometric;
    if (name == "explicit") return PrevalenceKind::explicit_probs;
    throw DomainError("unknown scenario '" + std::string(name) + "'");
}

PrevalenceModel PrevalenceModel::from_probs(std::vector<double> probs) {
    return PrevalenceModel(PrevalenceKind::explicit_probs, 0.0, std::move(probs));
}

PrevalenceModel::PrevalenceModel(PrevalenceKind kind, double param, std::vector<double> probs)
    : kind_(kind), param_(param), probs_(std::move(probs)), total_mass_(0.0) {
    if (probs_.empty()) throw DomainError("prevalence model needs M >= 1");
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("prevalence outside [0,1]");
        total_mass_ += p;
    }
}

IncidenceSample::IncidenceSample(Count n, std::vector<std::string> species, std::vector<Count> counts,
                                 std::optional<Count> declared_M)
    : n_(n), species_(std::move(species)), counts_(std::move(counts)), declared_M_(declared_M) {
    validate_and_cache(true);
}

IncidenceSample::IncidenceSample(Trusted, Count n, std::vector<std::string> species,
                                 std::vector<Count> counts, std::optional<Count> declared_M)
    : n_(n), species_(std::move(species)), counts_(std::move(counts)), declared_M_(declared_M) {
    validate_and_cache(false);
}

IncidenceSample IncidenceSample::from_counts(Count n, std::vector<Count> counts,
                                             std::optional<Count> declared_M) {
    std::vector<std::string> ids;
    ids.reserve(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) ids.push_back("s" + std::to_string(j + 1));
    return IncidenceSample(Trusted{}, n, std::move(ids), std::move(counts), declared_M);
}

IncidenceSample IncidenceSample::with_declared_M(std::optional<Count> M) const {
    return IncidenceSample(Trusted{}, n_, species_, counts_, M);
}

void IncidenceSample::validate_and_cache(bool check_unique_ids) {
    if (n_ < 1) throw DomainError("sample needs n >= 1");
    if (species_.size() != counts_.size()) throw DomainError("species/count length mismatch");
    total_ = 0;
    distinct_ = 0;
    for (Count c : counts_) {
        if (c < 0 || c > n_) throw DomainError("count outside [0, n]");
        total_ += c;
        if (c > 0) ++distinct_;
    }
    if (check_unique_ids) {
        std::unordered_set<std::string_view> seen;
        seen.reserve(species_.size());
        for (const auto& s : species_)
            if (!seen.insert(s).second) throw DomainError("duplicate species id '" + s + "'");
    }
    if (declared_M_) {
        if (*declared_M_ < 1) throw DomainError("declared M must be >= 1");
        if (distinct_ > *declared_M_)
            throw DomainError("declared M = " + std::to_string(*declared_M_) + " is below the " +
                              std::to_string(distinct_) + " observed species");
    }
}

IncidenceMatrix::IncidenceMatrix(std::size_t rows, std::vector<std::string> species)
    : rows_(rows), species_(std::move(species)), cells_(rows_ * species_.size(), 0) {}

IncidenceMatrix::IncidenceMatrix(std::size_t rows, std::vector<std::string> species,
                                 std::vector<std::uint8_t> cells)
    : rows_(rows), species_(std::move(species)), cells_(std::move(cells)) {
    if (cells_.size() != rows_ * species_.size()) throw DomainError("matrix cell count mismatch");
    for (auto& c : cells_) c = c ? 1 : 0;
}

std::vector<Count> IncidenceMatrix::column_sums() const {
    std::vector<Count> sums(cols(), 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::uint8_t* row = cells_.data() + i * cols();
        for (std::size_t j = 0; j < cols(); ++j) sums[j] += row[j];
    }
    return sums;
}

Count IncidenceMatrix::ones() const {
    return std::count(cells_.begin(), cells_.end(), std::uint8_t{1});
}

IncidenceSample IncidenceMatrix::to_sample(std::optional<Count> declared_M) const {
    return IncidenceSample(static_cast<Count>(rows_), species_, column_sums(), declared_M);
}

SampleStats sample_stats(const IncidenceSample& sample) {
    SampleStats st;
    st.n = sample.n();
    st.total_incidences = sample.total_incidences();
    st.distinct = sample.distinct();
    if (sample.declared_M()) st.unseen = *sample.declared_M() - sample.distinct();
    st.p_hat.reserve(sample.size());
    const double n = static_cast<double>(sample.n());
    for (Count c : sample.counts()) {
        if (c == 1) ++st.singletons;
        if (c == 2) ++st.doubletons;
        st.p_hat.push_back(static_cast<double>(c) / n);
    }
    return st;
}

std::string_view to_string(BoundMethod method) {
    switch (method) {
        case BoundMethod::bonferroni: return "bonferroni";
        case BoundMethod::worst_case: return "worstcase";
        case BoundMethod::bounded_dd: return "bounded";
        case BoundMethod::unbounded_rnorm: return "unbounded";
        case BoundMethod::prop1_oracle: return "prop1";
    }
    return "unknown";
}

BoundEstimate make_estimate(BoundMethod method, double alpha, double raw_value,
                            std::optional<double> delta, std::optional<double> beta) {
    BoundEstimate e;
    e.method = method;
    e.alpha = alpha;
    e.delta = delta;
    e.beta = beta;
    e.raw_value = raw_value;
    e.reported_value = std::clamp(raw_value, 0.0, 1.0);
    return e;
}

}  // namespace mmax
