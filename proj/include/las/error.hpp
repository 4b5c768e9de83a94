#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace las {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax error at a 1-based line/column.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SafetyError : public Error {
public:
    SafetyError(std::size_t rule_index, std::string variable, const std::string& where = "")
        : Error("unsafe variable " + variable + " in rule " + std::to_string(rule_index) + where),
          rule_index_(rule_index), variable_(std::move(variable)) {}
    std::size_t rule_index() const { return rule_index_; }
    const std::string& variable() const { return variable_; }

private:
    std::size_t rule_index_;
    std::string variable_;
};

class ArityError : public Error {
public:
    ArityError(const std::string& predicate, std::size_t first, std::size_t second)
        : Error("predicate " + predicate + " used with arity " + std::to_string(first) + " and " +
                std::to_string(second)) {}
};

// Semantic problems in task files (duplicate ids, bad penalties, bad bias).
class TaskError : public Error {
public:
    using Error::Error;
};

class GroundingError : public Error {
public:
    using Error::Error;
};

// A configured size limit (base atoms, space cap) was exceeded.
class LimitError : public Error {
public:
    using Error::Error;
};

// Malformed data files (CSV, discretization specs) and I/O problems.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace las
