#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace airec {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dataset
struct MalformedLine : Error {
    MalformedLine(std::size_t line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line_no(line_no) {}
    std::size_t line_no;
};
struct OffGridScore : Error {
    using Error::Error;
};
struct DuplicateVote : Error {
    using Error::Error;
};
struct InvalidParams : Error {
    using Error::Error;
};
struct NotEnoughUsers : Error {
    using Error::Error;
};
struct ProfileTooSmall : Error {
    using Error::Error;
};

// similarity
struct EmptyProfile : Error {
    using Error::Error;
};

// immune
struct PoolFull : Error {
    using Error::Error;
};
struct EmptyPool : Error {
    using Error::Error;
};

// evaluation
struct EmptyInput : Error {
    using Error::Error;
};
struct TooFewPairs : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct ConfigMismatch : Error {
    using Error::Error;
};

// cli / io
struct UnpairedUsers : Error {
    using Error::Error;
};
struct UnknownMetric : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace airec
