#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bolzano {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Division by a partial result that is exactly zero; carries the index.
class EvalError : public std::runtime_error {
public:
    EvalError(std::string message, long long index)
        : std::runtime_error(message + " (at index " + std::to_string(index) + ")"),
          index_(index) {}
    long long index() const { return index_; }

private:
    long long index_;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace bolzano
