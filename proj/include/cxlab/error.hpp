#pragma once

#include <stdexcept>
#include <string>

namespace cxlab {

/// Bad input: violated precondition, malformed file, unknown option.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A search or enumeration ran past its configured step/size budget.
/// The CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that cannot be decoded (dangling ids, inconsistent dictionaries).
class CorruptParse : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace cxlab
