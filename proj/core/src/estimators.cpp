#include "mmax/estimators.hpp"

#include <algorithm>
#include <numeric>

#include "mmax/error.hpp"

namespace mmax {

double s_hat(const IncidenceSample& sample) {
    return static_cast<double>(sample.total_incidences()) / static_cast<double>(sample.n());
}

std::optional<double> coverage_estimate(Count n, Count total_incidences, Count q1, Count q2) {
    if (n < 2 || total_incidences < 1) return std::nullopt;
    if (q1 == 0) return 1.0;
    const double f1 = static_cast<double>(q1);
    const double scaled = static_cast<double>(n - 1) * f1;
    const double c = 1.0 - (f1 / static_cast<double>(total_incidences)) *
                               (scaled / (scaled + 2.0 * static_cast<double>(q2)));
    return std::clamp(c, 0.0, 1.0);
}

std::optional<double> coverage_estimate(const IncidenceSample& sample) {
    Count q1 = 0, q2 = 0;
    for (Count c : sample.counts()) {
        q1 += c == 1;
        q2 += c == 2;
    }
    return coverage_estimate(sample.n(), sample.total_incidences(), q1, q2);
}

namespace {

std::vector<std::vector<std::size_t>> present_by_row(const IncidenceMatrix& m) {
    std::vector<std::vector<std::size_t>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j)) rows[i].push_back(j);
    return rows;
}

void accumulate_order(const std::vector<std::vector<std::size_t>>& rows,
                      std::span<const std::size_t> order, std::vector<char>& seen,
                      std::span<double> sums) {
    std::fill(seen.begin(), seen.end(), 0);
    Count distinct = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t j : rows[order[k]]) {
            if (!seen[j]) {
                seen[j] = 1;
                ++distinct;
            }
        }
        sums[k] += static_cast<double>(distinct);
    }
}

}  // namespace

std::vector<Count> accumulation_for_order(const IncidenceMatrix& matrix,
                                          std::span<const std::size_t> order) {
    if (order.size() != matrix.rows()) throw DomainError("ordering must cover every unit");
    const auto rows = present_by_row(matrix);
    std::vector<char> seen(matrix.cols(), 0);
    std::vector<double> sums(order.size(), 0.0);
    accumulate_order(rows, order, seen, sums);
    return {sums.begin(), sums.end()};
}

std::vector<double> accumulation_curve(const IncidenceMatrix& matrix, std::size_t n_perms,
                                       SeededStream& rng) {
    if (n_perms < 1) throw DomainError("n_perms must be >= 1");
    const std::size_t n = matrix.rows();
    std::vector<double> sums(n, 0.0);
    if (n == 0) return sums;

    const auto rows = present_by_row(matrix);
    std::vector<char> seen(matrix.cols(), 0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    double count = 0.0;
    if (n <= kExhaustiveMaxUnits) {
        do {
            accumulate_order(rows, order, seen, sums);
            count += 1.0;
        } while (std::next_permutation(order.begin(), order.end()));
    } else {
        for (std::size_t p = 0; p < n_perms; ++p) {
            std::shuffle(order.begin(), order.end(), rng.engine());
            accumulate_order(rows, order, seen, sums);
        }
        count = static_cast<double>(n_perms);
    }
    for (auto& s : sums) s /= count;
    return sums;
}

}  // namespace mmax
