#pragma once

#include <stdexcept>
#include <string>

namespace necklab {

/// Base class for all necklab runtime failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct ZeroVector : Error { using Error::Error; };
struct NotOnManifold : Error { using Error::Error; };
struct NotTangent : Error { using Error::Error; };

// rational families / sampling
struct DegenerateFamily : Error { using Error::Error; };
struct EmptyWindow : Error { using Error::Error; };

// heat flow
struct UnstableStep : Error { using Error::Error; };
struct GridTooSmall : Error { using Error::Error; };

// neck fitting
struct IllConditioned : Error { using Error::Error; };

// obstruction evaluation
struct NotNearManifold : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// plane geometry
struct NondegeneracyError : Error { using Error::Error; };
struct DegeneratePlane : Error { using Error::Error; };

// front-end
struct ConfigError : Error { using Error::Error; };
struct ComputationError : Error { using Error::Error; };

} // namespace necklab
