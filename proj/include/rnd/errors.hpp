#pragma once

#include <stdexcept>
#include <string>

namespace rnd {

// Malformed input files or records. The CLI maps this to exit code 2.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters outside the admissible region, or a numerical routine that
// cannot deliver a meaningful value. Exit code 3.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative method stopped before meeting its tolerances. Exit code 4 under --strict.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rnd
