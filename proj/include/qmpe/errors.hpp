#pragma once

#include <stdexcept>

namespace qmpe {

// Base class for every failure this library reports. Subtypes mirror the
// caller-visible error conditions of the individual modules so tests and the
// scan engine can classify failures without string matching.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };
struct VanishingNorm : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };
struct SlowModePresent : Error { using Error::Error; };
struct ZeroProjection : Error { using Error::Error; };
struct DegenerateQuadratic : Error { using Error::Error; };
struct NoRealTau : Error { using Error::Error; };
struct SingularSteadyState : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct EqualStart : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace qmpe
