// errors.hpp — exception types thrown across the toolkit.

#pragma once

#include <stdexcept>
#include <string>

namespace ozkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct NotSelfAdjointError : Error { using Error::Error; };
struct NotProjectionError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DegreeZeroError : Error { using Error::Error; };
struct BadDegreeError : Error { using Error::Error; };
struct ZeroHError : Error { using Error::Error; };
struct HypothesisFailedError : Error { using Error::Error; };
struct TooManyEigenvaluesError : Error { using Error::Error; };
struct EmptyCorpusError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct DimensionOverflowError : Error { using Error::Error; };
struct ContractViolatedError : Error { using Error::Error; };
struct BetaExhaustedError : Error { using Error::Error; };

} // namespace ozkit
