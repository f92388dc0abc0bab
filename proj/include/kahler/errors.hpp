#pragma once

#include <stdexcept>
#include <string>

namespace kahler {

/// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InexactDivision : Error { using Error::Error; };
struct IdentityViolation : Error { using Error::Error; };
struct EvaluationOutsideDomain : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct DimensionTooSmall : Error { using Error::Error; };

/// Construction-time failures. The CLI maps all of these to exit code 3.
struct BuildError : Error { using Error::Error; };
struct PositivityViolation : BuildError { using BuildError::BuildError; };
struct SignMismatch : BuildError { using BuildError::BuildError; };
struct DomainTooLarge : BuildError { using BuildError::BuildError; };

/// Malformed scenario input. The CLI maps this to exit code 2.
struct ConfigError : Error { using Error::Error; };

}  // namespace kahler
