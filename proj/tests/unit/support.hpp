#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mmax/model.hpp"
#include "mmax/rng.hpp"

namespace mmax::test {

inline double binomial_se(double p, double reps) { return std::sqrt(p * (1.0 - p) / reps); }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Upper 1% quantiles of chi-square, df = 1..15.
inline double chi2_crit_01(int df) {
    static const double table[] = {6.635,  9.210,  11.345, 13.277, 15.086, 16.812, 18.475, 20.090,
                                   21.666, 23.209, 24.725, 26.217, 27.688, 29.141, 30.578};
    return table[df - 1];
}

inline Count uniform_int(SeededStream& rng, Count lo, Count hi) {
    return lo + static_cast<Count>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

inline double uniform_real(SeededStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Random 0/1 matrix with per-column densities drawn uniformly.
inline IncidenceMatrix random_matrix(SeededStream& rng, std::size_t rows, std::size_t cols) {
    std::vector<std::string> ids;
    for (std::size_t j = 0; j < cols; ++j) ids.push_back("x" + std::to_string(j));
    IncidenceMatrix m(rows, ids);
    for (std::size_t j = 0; j < cols; ++j) {
        const double p = rng.uniform();
        for (std::size_t i = 0; i < rows; ++i) m.set(i, j, rng.bernoulli(p));
    }
    return m;
}

}  // namespace mmax::test
