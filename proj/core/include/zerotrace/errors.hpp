#pragma once

#include <stdexcept>
#include <string>

namespace zerotrace {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMesh : Error { using Error::Error; };
struct LevelTooLarge : Error { using Error::Error; };
struct NotARotation : Error { using Error::Error; };
struct DegenerateField : Error { using Error::Error; };
struct TheoremViolation : Error { using Error::Error; };
struct NoShiftStructure : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct PairSearchFailed : Error { using Error::Error; };
struct ROutOfRange : Error { using Error::Error; };
struct EvaluationError : Error { using Error::Error; };

/// Parse failure carrying the byte offset of the offending character.
struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t off)
        : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct UnknownIdentifier : Error {
    std::size_t offset;
    UnknownIdentifier(const std::string& name, std::size_t off)
        : Error("unknown identifier '" + name + "' at offset " + std::to_string(off)),
          offset(off) {}
};

}  // namespace zerotrace
