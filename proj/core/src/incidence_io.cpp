#include "mmax/incidence_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mmax/error.hpp"

namespace mmax {

IncidenceFormat parse_incidence_format(std::string_view name) {
    if (name == "dense") return IncidenceFormat::dense;
    if (name == "sparse") return IncidenceFormat::sparse;
    if (name == "counts") return IncidenceFormat::counts;
    throw DomainError("unknown incidence format '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Yields (line number, fields) for every non-blank line.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (trim(line).empty()) continue;
            fields = split_fields(line);
            return true;
        }
        return false;
    }
    std::size_t line() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

std::optional<Count> parse_integer(std::string_view s) {
    Count v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool is_header_token(std::string_view s, std::initializer_list<std::string_view> names) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return std::find(names.begin(), names.end(), lower) != names.end();
}

void require_fields(const std::vector<std::string>& fields, std::size_t expected, std::size_t line) {
    if (fields.size() != expected)
        throw DataError("expected " + std::to_string(expected) + " fields, found " + std::to_string(fields.size()),
                        line);
    for (const auto& f : fields)
        if (f.empty()) throw DataError("empty field", line);
}

IncidenceMatrix read_dense(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw DataError("empty input: missing header row", reader.line() + 1);
    std::vector<std::string> species = fields;
    {
        std::set<std::string> seen;
        for (const auto& id : species) {
            if (id.empty()) throw DataError("empty species id in header", reader.line());
            if (!seen.insert(id).second) throw DataError("duplicate species id '" + id + "'", reader.line());
        }
    }
    std::vector<std::uint8_t> cells;
    std::size_t rows = 0;
    while (reader.next(fields)) {
        if (fields.size() != species.size())
            throw DataError("row has " + std::to_string(fields.size()) + " cells, header has " +
                                std::to_string(species.size()),
                            reader.line());
        for (const auto& f : fields) {
            if (f == "0")
                cells.push_back(0);
            else if (f == "1")
                cells.push_back(1);
            else
                throw DataError("malformed cell '" + f + "' (expected 0 or 1)", reader.line());
        }
        ++rows;
    }
    if (rows == 0) throw DataError("no sampling units after header", reader.line());
    return IncidenceMatrix(rows, std::move(species), std::move(cells));
}

IncidenceMatrix read_sparse(std::istream& in) {
    LineReader reader(in);
    std::vector<std::string> fields;
    std::unordered_map<std::string, std::size_t> unit_index, species_index;
    std::vector<std::string> species;
    std::set<std::pair<std::size_t, std::size_t>> presences;
    bool first = true;
    while (reader.next(fields)) {
        require_fields(fields, 2, reader.line());
        if (first && is_header_token(fields[0], {"unit", "unit_id", "site", "sample"}) &&
            is_header_token(fields[1], {"species", "species_id", "otu", "taxon"})) {
            first = false;
            continue;
        }
        first = false;
        const auto u = unit_index.try_emplace(fields[0], unit_index.size()).first->second;
        auto [it, inserted] = species_index.try_emplace(fields[1], species.size());
        if (inserted) species.push_back(fields[1]);
        presences.emplace(u, it->second);
    }
    if (unit_index.empty()) throw DataError("no presence records", reader.line() + 1);
    IncidenceMatrix matrix(unit_index.size(), std::move(species));
    for (const auto& [u, s] : presences) matrix.set(u, s, true);
    return matrix;
}

IncidenceSample read_counts(std::istream& in, std::optional<Count> n) {
    if (!n) throw DomainError("counts format requires --n");
    if (*n < 1) throw DomainError("n must be >= 1");
    LineReader reader(in);
    std::vector<std::string> fields;
    std::vector<std::string> species;
    std::vector<Count> counts;
    std::set<std::string> seen;
    bool first = true;
    while (reader.next(fields)) {
        require_fields(fields, 2, reader.line());
        const auto value = parse_integer(fields[1]);
        if (first && !value && is_header_token(fields[1], {"count", "counts", "n", "incidence"})) {
            first = false;
            continue;
        }
        first = false;
        if (!value) throw DataError("malformed count '" + fields[1] + "'", reader.line());
        if (*value < 0) throw DataError("negative count", reader.line());
        if (*value > *n)
            throw DataError("count exceeds n (" + std::to_string(*value) + " > " + std::to_string(*n) + ")",
                            reader.line());
        if (!seen.insert(fields[0]).second)
            throw DataError("duplicate species id '" + fields[0] + "'", reader.line());
        species.push_back(fields[0]);
        counts.push_back(*value);
    }
    if (species.empty()) throw DataError("no count records", reader.line() + 1);
    return IncidenceSample(*n, std::move(species), std::move(counts));
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'", 0);
    return in;
}

}  // namespace

IncidenceSample parse_incidence(std::istream& in, IncidenceFormat format, std::optional<Count> n_override) {
    if (format == IncidenceFormat::counts) return read_counts(in, n_override);
    IncidenceMatrix matrix = parse_incidence_matrix(in, format);
    if (n_override && *n_override != static_cast<Count>(matrix.rows()))
        throw DomainError("--n = " + std::to_string(*n_override) + " disagrees with the " +
                          std::to_string(matrix.rows()) + " units in the input");
    return matrix.to_sample();
}

IncidenceSample parse_incidence(const std::filesystem::path& path, IncidenceFormat format,
                                std::optional<Count> n_override) {
    if (format == IncidenceFormat::counts && !n_override) throw DomainError("counts format requires --n");
    auto in = open_input(path);
    return parse_incidence(in, format, n_override);
}

IncidenceMatrix parse_incidence_matrix(std::istream& in, IncidenceFormat format) {
    switch (format) {
        case IncidenceFormat::dense: return read_dense(in);
        case IncidenceFormat::sparse: return read_sparse(in);
        case IncidenceFormat::counts: break;
    }
    throw DomainError("the counts format carries no unit-level matrix");
}

IncidenceMatrix parse_incidence_matrix(const std::filesystem::path& path, IncidenceFormat format) {
    if (format == IncidenceFormat::counts) throw DomainError("the counts format carries no unit-level matrix");
    auto in = open_input(path);
    return parse_incidence_matrix(in, format);
}

void write_dense(std::ostream& out, const IncidenceMatrix& matrix) {
    const auto species = matrix.species();
    for (std::size_t j = 0; j < species.size(); ++j) out << (j ? "," : "") << species[j];
    out << '\n';
    std::string row;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        row.clear();
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            if (j) row += ',';
            row += matrix.at(i, j) ? '1' : '0';
        }
        out << row << '\n';
    }
}

}  // namespace mmax
