#ifndef DYNKERN_ERRORS_HPP
#define DYNKERN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dynkern {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class MissingVertex : public Error {
public:
    explicit MissingVertex(const std::string& msg) : Error(msg) {}
};

class NonIsolatedVertex : public Error {
public:
    explicit NonIsolatedVertex(const std::string& msg) : Error(msg) {}
};

class MissingEdge : public Error {
public:
    explicit MissingEdge(const std::string& msg) : Error(msg) {}
};

class DuplicateVertex : public Error {
public:
    explicit DuplicateVertex(const std::string& msg) : Error(msg) {}
};

class DuplicateEdge : public Error {
public:
    explicit DuplicateEdge(const std::string& msg) : Error(msg) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

class SizeLimitExceeded : public Error {
public:
    explicit SizeLimitExceeded(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

} // namespace dynkern

#endif
