#pragma once

#include <stdexcept>
#include <string>

namespace vrellipse {

/// Invalid argument or violated precondition.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A result that the theory guarantees did not hold; indicates a bug or a
/// numerical breakdown rather than bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Raised by self-certifying constructions whose post-checks failed.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

/// Query outside the range where a closed-form answer is known.
class UnsupportedRangeError : public std::domain_error {
public:
    explicit UnsupportedRangeError(const std::string& what) : std::domain_error(what) {}
};

/// Combinatorial blow-up guard tripped.
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace vrellipse
