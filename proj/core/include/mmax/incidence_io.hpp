#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "mmax/model.hpp"

namespace mmax {

// dense:  header row of species ids, then one row of 0/1 cells per unit.
// sparse: "unit_id,species_id" presence records; duplicates collapse.
// counts: "species_id,count" records; n must be supplied separately.
enum class IncidenceFormat { dense, sparse, counts };

IncidenceFormat parse_incidence_format(std::string_view name);

IncidenceSample parse_incidence(std::istream& in, IncidenceFormat format,
                                std::optional<Count> n_override = std::nullopt);
IncidenceSample parse_incidence(const std::filesystem::path& path, IncidenceFormat format,
                                std::optional<Count> n_override = std::nullopt);

// Unit-level view; only dense and sparse carry one.
IncidenceMatrix parse_incidence_matrix(std::istream& in, IncidenceFormat format);
IncidenceMatrix parse_incidence_matrix(const std::filesystem::path& path, IncidenceFormat format);

void write_dense(std::ostream& out, const IncidenceMatrix& matrix);

}  // namespace mmax
