#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thinlaw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyOrNegative : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ZeroMean : Error {
    using Error::Error;
};

struct DeficitTooLarge : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

struct DegenerateSequence : Error {
    using Error::Error;
};

struct TooShort : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t offset;
    std::string expected;

    ParseError(std::size_t off, std::string exp)
        : Error("parse error at offset " + std::to_string(off) + ": expected " + exp),
          offset(off),
          expected(std::move(exp)) {}
};

}  // namespace thinlaw
