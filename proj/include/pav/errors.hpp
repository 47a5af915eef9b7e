#pragma once

#include <stdexcept>
#include <string>

namespace pav {

// Bad user input: unknown label, malformed conductor, unsupported parameters.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation exceeds the configured memory/size budget.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A certificate was requested without the required attested hypotheses.
struct attestation_error : std::runtime_error {
  explicit attestation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Counting asked for at a prime of bad reduction.
struct bad_reduction_error : std::runtime_error {
  explicit bad_reduction_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The supplied model is singular at a prime that does not divide the
// attested conductor; we refuse to guess a minimal model.
struct unusable_model_error : std::runtime_error {
  explicit unusable_model_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pav
