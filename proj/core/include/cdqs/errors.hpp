#pragma once

#include <stdexcept>
#include <string>

namespace cdqs {

// Malformed input: bad labels, non-Hermitian operands, invalid Kraus sets.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A dimension or enumeration budget would be exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solver or numerical failure that prevents a certified answer.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A checked mathematical claim did not hold.
class AssertionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cdqs
