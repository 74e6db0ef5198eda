#ifndef OLSIM_ERROR_HPP
#define OLSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace olsim {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Point/space mismatch, bad node index, malformed distance queries.
struct MetricError : Error {
  using Error::Error;
};

// Invalid matrices, malformed instance files, broken invariants.
struct ValidationError : Error {
  using Error::Error;
};

// Parameters outside an algorithm's admissible domain.
struct ConfigError : Error {
  using Error::Error;
};

// Problem size exceeds an exact solver's configured cap.
struct CapError : Error {
  using Error::Error;
};

// Prediction requested in a setting where it is undefined.
struct PredictorError : Error {
  using Error::Error;
};

// Misuse of the adaptive adversary protocol.
struct AdversaryError : Error {
  using Error::Error;
};

}  // namespace olsim

#endif
