// errors.hpp - exception types shared across the cfis library
#pragma once

#include <stdexcept>
#include <string>

namespace cfis {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural problems detected while assembling FIS / cascade objects:
// unknown variable or label references, empty antecedents, bad parameters.
struct BuildError : Error {
    using Error::Error;
};

// Input vector does not match the expected variable/field set, or a value
// is not finite. The message names the offending variable or field.
struct InputShapeError : Error {
    using Error::Error;
};

// Total firing strength was zero. Unreachable for a validated FIS fed
// clamped in-domain inputs; reaching it means profile corruption.
struct NoRuleFiredError : Error {
    using Error::Error;
};

// Document-level failure (JSON or CSV). `where` is a locatable path:
// a JSON pointer-ish path or a row/column coordinate.
struct ParseError : Error {
    ParseError(std::string where_, const std::string& message)
        : Error(where_.empty() ? message : where_ + ": " + message),
          where(std::move(where_)) {}
    std::string where;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace cfis
