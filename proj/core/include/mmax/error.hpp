#pragma once

#include <stdexcept>
#include <string>

namespace mmax {

// Invalid parameter or violated precondition (bad alpha, r < 1, M < distinct, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed input data (incidence files, counts exceeding n).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

}  // namespace mmax
