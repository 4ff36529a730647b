#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modalpres {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input: formula syntax, JSON syntax or schema violations.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position = npos)
        : Error(position == npos ? what : what + " at position " + std::to_string(position)),
          position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Well-formed input that violates a semantic constraint.
class ModelError : public Error {
public:
    using Error::Error;
};

class NotATreeError : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class UnknownProposition : public Error {
public:
    using Error::Error;
};

// Formula outside the fragment an operation requires.
class FragmentError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

} // namespace modalpres
