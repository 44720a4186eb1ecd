#pragma once

#include <stdexcept>
#include <string>

namespace levystop {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// model
struct InvalidParameter : Error { using Error::Error; };
struct NonPositiveRate : Error { using Error::Error; };
struct DegenerateModel : Error { using Error::Error; };
struct DriftNotNegative : Error { using Error::Error; };
struct PoleEvaluation : Error { using Error::Error; };
struct EnvelopeOutsideStrip : Error { using Error::Error; };

// spectral
struct RootBracketFailure : Error { using Error::Error; };
struct DriftAssumptionViolated : Error { using Error::Error; };

// wiener-hopf
struct FactorConstructionFailure : Error { using Error::Error; };
struct OutOfConvergenceStrip : Error { using Error::Error; };

// stopping
struct DomainError : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct QuadratureNonConvergence : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };

}  // namespace levystop
