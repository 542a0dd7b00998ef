#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ripscover {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidScenario : public Error {
public:
    using Error::Error;
};

class EmptyRestrictedDomain : public Error {
public:
    EmptyRestrictedDomain() : Error("restricted domain is empty at this grid resolution") {}
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t expected, std::size_t got)
        : Error("length mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(got)) {}
};

class InvalidMetric : public Error {
public:
    using Error::Error;
};

class InvalidCorrespondence : public Error {
public:
    using Error::Error;
};

/// A map sends a point of A and a point outside A to the same image.
class CollisionError : public Error {
public:
    CollisionError(int in_subset, int outside)
        : Error("collision: f(" + std::to_string(in_subset) + ") == f(" + std::to_string(outside) + ")"),
          in_subset_(in_subset), outside_(outside) {}
    int in_subset() const { return in_subset_; }
    int outside() const { return outside_; }

private:
    int in_subset_;
    int outside_;
};

class EmptySet : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class CombinatorialBlowup : public Error {
public:
    explicit CombinatorialBlowup(std::size_t budget)
        : Error("simplex count exceeds budget of " + std::to_string(budget)) {}
};

class NotSimplicial : public Error {
public:
    using Error::Error;
};

class SimplexMissing : public Error {
public:
    using Error::Error;
};

class NotACycle : public Error {
public:
    NotACycle() : Error("chain is not a cycle") {}
};

class NotARelativeCycle : public Error {
public:
    NotARelativeCycle() : Error("chain boundary has a non-fence component") {}
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class ZeroChain : public Error {
public:
    ZeroChain() : Error("chain is zero") {}
};

class EmptyMask : public Error {
public:
    EmptyMask() : Error("mask has no occupied cell") {}
};

class SizeExceeded : public Error {
public:
    using Error::Error;
};

/// Raised when a transported coverage cycle fails its own nonzero-image check.
class TransportFailure : public Error {
public:
    using Error::Error;
};

}  // namespace ripscover
