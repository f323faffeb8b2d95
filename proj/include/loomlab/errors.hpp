#ifndef LOOMLAB_ERRORS_HPP
#define LOOMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loomlab {

/// Violated operation precondition (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Search or enumeration budget exhausted (CLI exit code 3).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or argument (CLI exit code 4).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace loomlab

#endif
