#pragma once

#include <stdexcept>
#include <string>

namespace qssamp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- chain validation ---------------------------------------------------------

struct RowSumError : Error {
  using Error::Error;
};

struct NegativeEntryError : Error {
  using Error::Error;
};

/// Carries which of the two ergodicity checks failed.
struct NotErgodicError : Error {
  NotErgodicError(const std::string& what, bool irreducible, bool aperiodic)
      : Error(what), irreducible(irreducible), aperiodic(aperiodic) {}
  bool irreducible;
  bool aperiodic;
};

/// Malformed chain JSON; the message names the failing field.
struct ChainFormatError : Error {
  using Error::Error;
};

// -- numerical routines -------------------------------------------------------

struct ConvergenceError : Error {
  using Error::Error;
};

struct EigensolverError : Error {
  using Error::Error;
};

struct IterationCapError : Error {
  using Error::Error;
};

struct SingularSystemError : Error {
  using Error::Error;
};

struct ZeroStationaryEntryError : Error {
  using Error::Error;
};

struct BadParamsError : Error {
  using Error::Error;
};

// -- interpolation ------------------------------------------------------------

struct IndexError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

// -- spectral Hamiltonian -----------------------------------------------------

struct NotReversibleError : Error {
  using Error::Error;
};

struct DegenerateTopEigenvalueError : Error {
  using Error::Error;
};

struct NotNormalizedError : Error {
  using Error::Error;
};

// -- analog simulation --------------------------------------------------------

struct BadSizeError : Error {
  using Error::Error;
};

struct ZeroProbabilityError : Error {
  using Error::Error;
};

struct NonPositiveGapError : Error {
  using Error::Error;
};

struct NoValidJError : Error {
  using Error::Error;
};

// -- cost model ---------------------------------------------------------------

struct DivergenceError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace qssamp
