#ifndef COHESION_ERROR_HPP
#define COHESION_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cohesion {

enum class ErrorCode {
    parse,
    validation,
    domain,
    resource,
    convergence,
    io,
};

/// Base of every exception thrown by the library. The code is what the C API
/// and the CLI map to status values and exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorCode::resource, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace cohesion

#endif
