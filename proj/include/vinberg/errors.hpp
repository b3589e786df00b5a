#pragma once

#include <stdexcept>
#include <string>

namespace vinberg {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int ln, int col, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(ln) + ":" +
                             std::to_string(col) + ": " + msg),
          line(ln), column(col) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg)
        : std::runtime_error("validation error: " + msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg)
        : std::runtime_error("domain error: " + msg) {}
};

struct NonRealRadicand : std::runtime_error {
    explicit NonRealRadicand(const std::string& msg)
        : std::runtime_error("non-real radicand: " + msg) {}
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero field element") {}
};

struct NotLorentzian : std::runtime_error {
    explicit NotLorentzian(const std::string& msg)
        : std::runtime_error("not Lorentzian: " + msg) {}
};

struct IncompleteColoring : std::runtime_error {
    explicit IncompleteColoring(const std::string& msg)
        : std::runtime_error("incomplete coloring: " + msg) {}
};

// Invariant breakage inside the library itself, never a user input problem.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg)
        : std::logic_error("internal error: " + msg) {}
};

}  // namespace vinberg
