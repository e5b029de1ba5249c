#ifndef ALCOVE_ERRORS_HPP
#define ALCOVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alcove {

/// Base class for all errors raised by the library.  The `what()` string
/// names the violated invariant; the CLI maps these to exit code 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A root value lies within tolerance of both 0 and 1 (requires tol >= 1/2).
struct InconsistentTolerance : Error {
  using Error::Error;
};

/// The sum of eigenphases deviates from an integer by more than tolerance.
struct NonIntegralSum : Error {
  using Error::Error;
};

/// An eigensolver did not converge.
struct EigenFailure : Error {
  using Error::Error;
};

/// A matrix required to be symmetric is not, beyond tolerance.
struct NotSymmetric : Error {
  using Error::Error;
};

/// The involution on configurations is only defined for genus 0 here.
struct GenusUnsupported : Error {
  using Error::Error;
};

/// The configuration's momentum value is not the identity within tolerance.
struct NotInFiber : Error {
  using Error::Error;
};

/// A chain fails the fixed-point relations of the involution.
struct NotBetaFixed : Error {
  using Error::Error;
};

/// Two clouds that must share class data do not.
struct DataMismatch : Error {
  using Error::Error;
};

/// Two distinct cells attain the maximal orbit dimension in one cloud.
struct AmbiguousCell : Error {
  using Error::Error;
};

}  // namespace alcove

#endif
