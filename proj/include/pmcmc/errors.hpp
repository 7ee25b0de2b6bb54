#ifndef PMCMC_ERRORS_HPP
#define PMCMC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pmcmc {

// Base of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every selection mass of a proposal cloud is zero. Chain drivers resolve
// this by staying at the current state; it only escapes when the weight
// routines are called directly on an unusable cloud.
struct AllMassesZero : Error {
  AllMassesZero() : Error("all selection masses are zero") {}
};

// Sum of the user-specified MH wedge weights exceeds one.
struct WeightBudgetExceeded : Error {
  using Error::Error;
};

// A sampler step produced a NaN or infinite coordinate.
struct NonFiniteState : Error {
  explicit NonFiniteState(std::uint64_t iter)
      : Error("non-finite state at iteration " + std::to_string(iter)),
        iteration(iter) {}
  std::uint64_t iteration;
};

// Proposal density has no evaluable log-density.
struct MissingDensity : Error {
  using Error::Error;
};

// Brute-force enumeration guard exceeded.
struct TooLarge : Error {
  using Error::Error;
};

// Invalid algorithm or target configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Dimension mismatch between inputs.
struct DimensionError : Error {
  using Error::Error;
};

// Dense linear solve received non-finite inputs.
struct SolveFailure : Error {
  using Error::Error;
};

// Diagnostics on an empty chain or series.
struct EmptyChain : Error {
  using Error::Error;
};

// Degenerate series with zero sample variance.
struct ZeroVariance : Error {
  using Error::Error;
};

// Multi-chain diagnostics with incompatible chain shapes.
struct ShapeMismatch : Error {
  using Error::Error;
};

// Malformed configuration document.
struct ParseError : Error {
  using Error::Error;
};

struct UnknownSampler : Error {
  explicit UnknownSampler(const std::string& id)
      : Error("unknown sampler id: " + id) {}
};

struct UnknownTarget : Error {
  explicit UnknownTarget(const std::string& id)
      : Error("unknown target id: " + id) {}
};

}  // namespace pmcmc

#endif
