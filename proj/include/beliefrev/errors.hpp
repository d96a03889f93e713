#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace beliefrev {

using Mask = std::uint32_t;

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed frame, partition, mass or model input.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Operation called outside its stated domain (e.g. zero trials, unknown rule).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Normalization requested while all mass sits on the empty set.
class TotalConflict : public Error {
public:
    using Error::Error;
};

// Errors that name the subset responsible.
class SubsetError : public Error {
public:
    SubsetError(const std::string& what, Mask subset) : Error(what), subset_(subset) {}
    Mask subset() const noexcept { return subset_; }

private:
    Mask subset_;
};

class ZeroPlausibility : public SubsetError {
public:
    using SubsetError::SubsetError;
};

class ZeroBelief : public SubsetError {
public:
    using SubsetError::SubsetError;
};

// A focal set of the revising mass function is not a union of partition atoms.
class NotOnSubalgebra : public SubsetError {
public:
    using SubsetError::SubsetError;
};

// Möbius inversion produced a negative mass.
class NotBeliefFunction : public SubsetError {
public:
    using SubsetError::SubsetError;
};

}  // namespace beliefrev
