#pragma once

#include <stdexcept>
#include <string>

namespace coregraph {

// Base for all library errors. Messages start with a stable kebab-case
// token (e.g. "dimension-mismatch: ...") so callers can match on them.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs: bad shapes, non-finite values, out-of-range parameters.
class ValidationError : public Error {
public:
    using Error::Error;
};

// File format and filesystem problems.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace coregraph
