#include <doctest.h>

#include <sstream>

#include "mmax/error.hpp"
#include "mmax/incidence_io.hpp"

using namespace mmax;

namespace {

IncidenceSample parse(const std::string& text, IncidenceFormat f, std::optional<Count> n = std::nullopt) {
    std::istringstream in(text);
    return parse_incidence(in, f, n);
}

long error_line(const std::string& text, IncidenceFormat f, std::optional<Count> n = std::nullopt) {
    try {
        parse(text, f, n);
    } catch (const DataError& e) {
        return e.line();
    }
    return -1;
}

Count count_of(const IncidenceSample& s, std::string_view id) {
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s.species()[j] == id) return s.counts()[j];
    return -1;
}

}  // namespace

TEST_SUITE("incidence_io") {

TEST_CASE("dense") {
    const auto s = parse("a,b\n1,0\n0,1\n", IncidenceFormat::dense);
    CHECK(s.n() == 2);
    CHECK(count_of(s, "a") == 1);
    CHECK(count_of(s, "b") == 1);
}

TEST_CASE("dense tolerates CRLF, blank lines and padding") {
    const auto s = parse("a, b\r\n\r\n1, 1\r\n1,0\r\n\n", IncidenceFormat::dense);
    CHECK(s.n() == 2);
    CHECK(count_of(s, "a") == 2);
    CHECK(count_of(s, "b") == 1);
}

TEST_CASE("dense errors carry line numbers") {
    CHECK(error_line("a,b\n1,0\n0,2\n", IncidenceFormat::dense) == 3);
    CHECK(error_line("a,b\n1,0\n\n1\n", IncidenceFormat::dense) == 4);
    CHECK(error_line("a,a\n1,0\n", IncidenceFormat::dense) == 1);
    CHECK_THROWS_AS(parse("a,b\n", IncidenceFormat::dense), DataError);
    CHECK_THROWS_AS(parse("", IncidenceFormat::dense), DataError);
}

TEST_CASE("sparse collapses duplicates") {
    const auto s = parse("u1,a\nu1,a\nu2,a\n", IncidenceFormat::sparse);
    CHECK(s.n() == 2);
    CHECK(s.size() == 1);
    CHECK(count_of(s, "a") == 2);
}

TEST_CASE("sparse header and errors") {
    const auto s = parse("unit_id,species_id\nu1,a\nu2,b\n", IncidenceFormat::sparse);
    CHECK(s.n() == 2);
    CHECK(s.size() == 2);
    CHECK(error_line("u1,a\nu2\n", IncidenceFormat::sparse) == 2);
    CHECK(error_line("u1,a\nu2,\n", IncidenceFormat::sparse) == 2);
}

TEST_CASE("counts") {
    const auto s = parse("species_id,count\na,2\nb,0\n", IncidenceFormat::counts, 3);
    CHECK(s.n() == 3);
    CHECK(count_of(s, "a") == 2);
    CHECK(count_of(s, "b") == 0);
}

TEST_CASE("counts errors") {
    try {
        parse("a,5\n", IncidenceFormat::counts, 3);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("count exceeds n") != std::string::npos);
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(parse("a,1\n", IncidenceFormat::counts), DomainError);
    CHECK(error_line("a,1\nb,x\n", IncidenceFormat::counts, 3) == 2);
    CHECK(error_line("a,1\nb,-1\n", IncidenceFormat::counts, 3) == 2);
    CHECK(error_line("a,1\na,2\n", IncidenceFormat::counts, 3) == 2);
}

TEST_CASE("n override must agree with unit-level data") {
    CHECK(parse("a\n1\n0\n", IncidenceFormat::dense, 2).n() == 2);
    CHECK_THROWS_AS(parse("a\n1\n0\n", IncidenceFormat::dense, 5), DomainError);
}

TEST_CASE("dense write and read round-trip") {
    IncidenceMatrix m(3, {"x", "y"});
    m.set(0, 1, true);
    m.set(2, 0, true);
    std::ostringstream out;
    write_dense(out, m);
    CHECK(out.str() == "x,y\n0,1\n0,0\n1,0\n");
    std::istringstream in(out.str());
    const auto back = parse_incidence_matrix(in, IncidenceFormat::dense);
    CHECK(std::equal(back.cells().begin(), back.cells().end(), m.cells().begin()));
}

TEST_CASE("format names") {
    CHECK(parse_incidence_format("sparse") == IncidenceFormat::sparse);
    CHECK_THROWS_AS(parse_incidence_format("tsv"), DomainError);
    std::istringstream in("a,1\n");
    CHECK_THROWS_AS(parse_incidence_matrix(in, IncidenceFormat::counts), DomainError);
}

}
