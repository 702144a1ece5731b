#pragma once

#include <stdexcept>
#include <string>

namespace nctorus {

// Input or invariant violation (bad theta, mismatched algebras, bad exponent).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Index outside a lattice box.
class RangeError : public std::out_of_range {
public:
    explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

} // namespace nctorus
