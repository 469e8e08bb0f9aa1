#pragma once

#include <stdexcept>
#include <string>

namespace zipshift {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownSymbol : Error { using Error::Error; };
struct DuplicateSymbol : Error { using Error::Error; };
struct NotTotal : Error { using Error::Error; };
struct NotSurjective : Error { using Error::Error; };
struct AlphabetViolation : Error { using Error::Error; };
struct EmptyPeriod : Error { using Error::Error; };
struct AlphabetMismatch : Error { using Error::Error; };
struct EqualPoints : Error { using Error::Error; };
struct InvalidChoice : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct DeltaTooLarge : Error { using Error::Error; };
struct InconsistentSplice : Error { using Error::Error; };
struct NotFullBranch : Error { using Error::Error; };
struct NotACover : Error { using Error::Error; };
struct DiameterTooLarge : Error { using Error::Error; };
struct ImageMismatch : Error { using Error::Error; };
struct BoundaryHit : Error { using Error::Error; };
struct InvalidPastBranch : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Consecutive-gap violation in a would-be pseudo-orbit; carries the first
// offending step (absolute index) and its exact gap, preformatted.
struct NotPseudoOrbit : Error {
    long long index;
    std::string gap;
    NotPseudoOrbit(long long idx, std::string gap_str)
        : Error("not a pseudo-orbit: gap at step " + std::to_string(idx) +
                " is " + gap_str),
          index(idx),
          gap(std::move(gap_str)) {}
};

}  // namespace zipshift
