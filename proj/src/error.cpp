#include "hypam/error.hpp"

namespace hypam {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotOnQuadric: return "NotOnQuadric";
        case ErrorKind::OnQuadric: return "OnQuadric";
        case ErrorKind::DegenerateSpan: return "DegenerateSpan";
        case ErrorKind::OnRealLocus: return "OnRealLocus";
        case ErrorKind::ArgumentBelowOne: return "ArgumentBelowOne";
        case ErrorKind::BadScale: return "BadScale";
        case ErrorKind::AtOrigin: return "AtOrigin";
        case ErrorKind::CoincidingEndpoints: return "CoincidingEndpoints";
        case ErrorKind::SingularParameter: return "SingularParameter";
        case ErrorKind::NotOnSurface: return "NotOnSurface";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::EmptyAmoeba: return "EmptyAmoeba";
        case ErrorKind::EmptyCloud: return "EmptyCloud";
        case ErrorKind::ZeroCoordinate: return "ZeroCoordinate";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::NoComplementFound: return "NoComplementFound";
        case ErrorKind::InconsistentData: return "InconsistentData";
        case ErrorKind::InputError: return "InputError";
    }
    return "UnknownError";
}

} // namespace hypam
