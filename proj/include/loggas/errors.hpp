#pragma once

#include <stdexcept>
#include <string>

namespace loggas {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSelfDualError : Error {
    explicit NotSelfDualError(const std::string& msg) : Error(msg) {}
};

struct DimensionTooLargeError : Error {
    explicit DimensionTooLargeError(const std::string& msg) : Error(msg) {}
};

struct RouteMismatchError : Error {
    explicit RouteMismatchError(const std::string& msg) : Error(msg) {}
};

struct OffLatticeError : Error {
    explicit OffLatticeError(const std::string& msg) : Error(msg) {}
};

struct QuadratureNotConvergedError : Error {
    explicit QuadratureNotConvergedError(const std::string& msg) : Error(msg) {}
};

struct UnsupportedSpecError : Error {
    explicit UnsupportedSpecError(const std::string& msg) : Error(msg) {}
};

struct CollisionDetectedError : Error {
    explicit CollisionDetectedError(const std::string& msg) : Error(msg) {}
};

struct SubstepCapExceededError : Error {
    explicit SubstepCapExceededError(const std::string& msg) : Error(msg) {}
};

struct ChainNotAdaptedError : Error {
    explicit ChainNotAdaptedError(const std::string& msg) : Error(msg) {}
};

struct ZeroVectorError : Error {
    explicit ZeroVectorError(const std::string& msg) : Error(msg) {}
};

struct RatioNotLessThanOneError : Error {
    explicit RatioNotLessThanOneError(const std::string& msg) : Error(msg) {}
};

struct EigensolverFailure : Error {
    explicit EigensolverFailure(const std::string& msg) : Error(msg) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

}  // namespace loggas
