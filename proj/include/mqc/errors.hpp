#pragma once

#include <stdexcept>
#include <string>

namespace mqc {

/// Base of every error raised by the engine. Callers that only need a
/// message can catch this; the subclasses identify the failed contract.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IncompatibleRing : public Error { public: using Error::Error; };
class MissingAssignment : public Error { public: using Error::Error; };
class NonUnit : public Error { public: using Error::Error; };
class CompositionDomain : public Error { public: using Error::Error; };
class ReversionError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class UnsupportedInput : public Error { public: using Error::Error; };
class DualityError : public Error { public: using Error::Error; };
class UndeclaredPole : public Error { public: using Error::Error; };
class PolarizationError : public Error { public: using Error::Error; };
class PrecisionError : public Error { public: using Error::Error; };

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace mqc
