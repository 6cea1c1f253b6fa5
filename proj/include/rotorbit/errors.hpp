#pragma once

#include <stdexcept>
#include <string>

namespace rotorbit {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact-arithmetic domain errors (CLI exit code 3).
struct domain_error : error {
  using error::error;
};

struct division_by_zero : domain_error {
  division_by_zero() : domain_error("division by zero") {}
};

/// No exact square root exists inside Q(sqrt2, sqrt3, sqrt5).
struct not_in_field : domain_error {
  explicit not_in_field(const std::string& what = "value has no square root in the field")
      : domain_error(what) {}
};

/// Angle whose cosine is not representable in the field.
struct unsupported_angle : domain_error {
  explicit unsupported_angle(const std::string& what = "angle not supported in exact mode")
      : domain_error(what) {}
};

struct mixed_radicals : domain_error {
  mixed_radicals() : domain_error("coefficient mixes more than one radical") {}
};

struct not_on_unit_circle : domain_error {
  not_on_unit_circle() : domain_error("quadratic coefficient exceeds 2 in absolute value") {}
};

struct not_monic : domain_error {
  not_monic() : domain_error("polynomial must be monic") {}
};

struct not_prime : domain_error {
  explicit not_prime(const std::string& what = "argument must be an odd prime") : domain_error(what) {}
};

/// The generator pair falls in the excluded half-turn/half-turn configuration.
struct excluded_case : domain_error {
  excluded_case() : domain_error("excluded case: both generators are half-turns") {}
};

struct not_unit : domain_error {
  not_unit() : domain_error("vector must have unit norm") {}
};

struct unrecognized_group : error {
  explicit unrecognized_group(const std::string& what = "group does not match any known pattern")
      : error(what) {}
};

struct schur_failure : error {
  explicit schur_failure(const std::string& what = "invariant-plane reduction failed") : error(what) {}
};

struct too_few_points : error {
  too_few_points() : error("too few points for a circle fit") {}
};

/// Malformed textual input (CLI exit code 2).
struct parse_error : error {
  using error::error;
};

/// Cross-module disagreement (CLI exit code 4).
struct consistency_error : error {
  using error::error;
};

}  // namespace rotorbit
