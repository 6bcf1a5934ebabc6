#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rulesmith {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed dataset line.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

// Well-formed input that violates a dataset constraint (reserved names, collisions).
class InputError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Endpoint unreachable or persistently failing.
class TransportError : public Error {
public:
    using Error::Error;
};

class AuthError : public Error {
public:
    using Error::Error;
};

}  // namespace rulesmith
