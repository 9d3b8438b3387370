#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtspp {

/// Base class of every failure raised by the library. Each concrete type
/// names one failure mode so callers can react to it specifically.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QTSPP_DEFINE_ERROR(Name)              \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

QTSPP_DEFINE_ERROR(InvalidArgument);
QTSPP_DEFINE_ERROR(ZeroInverse);
QTSPP_DEFINE_ERROR(DuplicateAbscissa);
QTSPP_DEFINE_ERROR(NoFit);
QTSPP_DEFINE_ERROR(PoleAtSample);
QTSPP_DEFINE_ERROR(NoReconstruction);
QTSPP_DEFINE_ERROR(DegenerateDenominator);
QTSPP_DEFINE_ERROR(InsufficientData);
QTSPP_DEFINE_ERROR(NoRecurrence);
QTSPP_DEFINE_ERROR(TooFewPoints);
QTSPP_DEFINE_ERROR(ReconstructionFailed);
QTSPP_DEFINE_ERROR(SizeLimit);
QTSPP_DEFINE_ERROR(SeriesTruncationTooShort);
QTSPP_DEFINE_ERROR(FormatError);
QTSPP_DEFINE_ERROR(ResidualMismatch);

#undef QTSPP_DEFINE_ERROR

/// Raised when elimination finds a column without a nonzero pivot.
/// `index` is the offending column, or the table row n for cofactor solves.
class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, std::size_t index)
      : Error("SingularMatrix: " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace qtspp
