#pragma once

#include <stdexcept>
#include <string>

namespace pa {

// Error taxonomy shared by all modules. Everything derives from Error so
// callers can catch the whole family at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : Error { using Error::Error; };
struct EmptyResult : Error { using Error::Error; };
struct OriginNotInterior : Error { using Error::Error; };
struct ContainmentNotCertified : Error { using Error::Error; };
struct CurvatureUnavailable : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct NotVolumePreserving : Error { using Error::Error; };
struct DeltaOutOfRange : Error { using Error::Error; };
struct CutVolumeUnresolved : Error { using Error::Error; };
struct SeparationFailure : Error { using Error::Error; };
struct RejectionStall : Error { using Error::Error; };
struct KindUnsupported : Error { using Error::Error; };
struct PoolExhausted : Error { using Error::Error; };
struct NonTermination : Error { using Error::Error; };
struct RollingConditionUnavailable : Error { using Error::Error; };
struct NotSimple : Error { using Error::Error; };
struct NormalizationFailure : Error { using Error::Error; };
struct UnknownConstant : Error { using Error::Error; };
struct InsufficientRange : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace pa
