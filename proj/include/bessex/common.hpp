#pragma once

#include <stdexcept>
#include <string>

namespace bessex {

// Invalid input: bad parameter ranges, mode mismatches, poles hit on purpose.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that could not reach its accuracy target: cancellation
// overflow, missing brackets, non-convergent iterations.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace bessex
