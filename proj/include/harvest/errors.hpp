#pragma once

#include <stdexcept>
#include <string>

namespace harvest {

// Argument outside the domain of a function (r <= 0, tau >= 0 on the infaller, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Coordinate singularity hit exactly, e.g. the tortoise coordinate at r = r_s.
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// Result not representable in double precision.
struct RangeError : std::range_error {
  using std::range_error::range_error;
};

// A coordinate chart was requested where it does not cover the worldline.
struct PatchError : std::domain_error {
  using std::domain_error::domain_error;
};

// Non-finite integrand sample, or an assembled object violating a structural identity.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace harvest
