#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elpq {

/// Position of a diagnostic inside the source text. Offsets are byte
/// offsets, line and column are 1-based.
struct SourceSpan {
    std::size_t start  = 0;
    std::size_t end    = 0;
    std::size_t line   = 1;
    std::size_t column = 1;
};

/// Coarse error classes. The CLI maps them onto exit codes.
enum class ErrorKind {
    Validation, // malformed input: syntax, arity, variable overlap, ...
    Semantic,   // well-formed input used in an unsupported way
    Budget      // a configured resource cap was hit
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, SourceSpan span)
        : Error(ErrorKind::Validation, format(msg, span)), span_(span) {}
    const SourceSpan& span() const noexcept { return span_; }

    static std::string format(const std::string& msg, const SourceSpan& s) {
        return std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + msg;
    }

private:
    SourceSpan span_;
};

class ArityMismatchError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class ClassicalNegationOutsideEpistemicError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class NonGroundError : public Error {
public:
    explicit NonGroundError(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

class ReservedNameCollision : public Error {
public:
    explicit ReservedNameCollision(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

class EpistemicPresent : public Error {
public:
    EpistemicPresent() : Error(ErrorKind::Semantic, "program contains epistemic literals") {}
};

class WrongFragment : public Error {
public:
    explicit WrongFragment(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

class EmptyCollection : public Error {
public:
    EmptyCollection() : Error(ErrorKind::Semantic, "empty collection of answer sets") {}
};

class UncoveredRule : public Error {
public:
    explicit UncoveredRule(const std::string& what) : Error(ErrorKind::Semantic, what) {}
};

class VariableOverlap : public Error {
public:
    explicit VariableOverlap(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class InvalidInstance : public Error {
public:
    explicit InvalidInstance(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class ClauseWidthExceeded : public Error {
public:
    explicit ClauseWidthExceeded(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class ConstraintViolated : public Error {
public:
    ConstraintViolated() : Error(ErrorKind::Semantic, "constraint violated by least model") {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

} // namespace elpq
