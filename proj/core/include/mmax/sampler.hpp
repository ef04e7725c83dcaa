#pragma once

#include <cstddef>
#include <cstdint>
#include <queue>
#include <vector>

#include "mmax/model.hpp"
#include "mmax/rng.hpp"

namespace mmax {

// zipf:                p_j = (j+1)^(-gamma),  gamma > 0
// geometric:           p_j = a^j,             a in (0,1)
// homogeneous:         p_j = 1/c,             c >= 1
// truncated_geometric: p_j = (1-a)^(j-1),     a in (0,1)
// for j = 1..M.
PrevalenceModel make_prevalences(PrevalenceKind kind, double param, std::size_t M);

// Independent N_j ~ Binomial(n, p_j); declared_M = model.alphabet_size().
IncidenceSample draw_sample(const PrevalenceModel& model, Count n, SeededStream& rng);

// Entry (i, j) ~ Bernoulli(p_j), independent. Columns named "s1".."sM".
IncidenceMatrix draw_incidence_matrix(const PrevalenceModel& model, std::size_t n, SeededStream& rng);

struct ContaminationResult {
    IncidenceMatrix matrix;
    Count n_errors = 0;
};

// Each 1-entry independently becomes an error with probability q: the entry is
// cleared and a new singleton column "err<k>" with a 1 in the same row is appended.
ContaminationResult contaminate(const IncidenceMatrix& matrix, double q, SeededStream& rng);

// Draws sampling units one at a time from a Bernoulli product model with
// singleton-error contamination. Each species' presence sequence is generated
// by geometric gap skipping, so the per-unit cost is proportional to the number
// of realised presences rather than to M.
class SequentialSampler {
public:
    struct Unit {
        std::vector<std::size_t> present;  // true species recorded in this unit
        Count errors = 0;                  // presences turned into new error species
    };

    SequentialSampler(const PrevalenceModel& model, double q, SeededStream& rng);

    // Produces the next unit (units are numbered from 1).
    const Unit& next();
    Count units_drawn() const noexcept { return unit_; }

private:
    struct Event {
        Count unit;
        std::size_t species;
        bool operator>(const Event& o) const noexcept {
            return unit != o.unit ? unit > o.unit : species > o.species;
        }
    };

    Count gap(std::size_t species);

    const PrevalenceModel* model_;
    double q_;
    SeededStream* rng_;
    Count unit_ = 0;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    Unit current_;
};

}  // namespace mmax
