#pragma once

#include <stdexcept>
#include <string>

namespace hypam {

enum class ErrorKind {
    NotOnQuadric,
    OnQuadric,
    DegenerateSpan,
    OnRealLocus,
    ArgumentBelowOne,
    BadScale,
    AtOrigin,
    CoincidingEndpoints,
    SingularParameter,
    NotOnSurface,
    SingularPoint,
    EmptyAmoeba,
    EmptyCloud,
    ZeroCoordinate,
    DimensionMismatch,
    IllConditioned,
    NoComplementFound,
    InconsistentData,
    InputError,
};

const char* to_string(ErrorKind k);

/// All library errors carry a kind so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace hypam
