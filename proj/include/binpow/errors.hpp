#pragma once

#include <stdexcept>
#include <string>

namespace binpow {

/// Precondition violated by the caller (CLI exit status 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A requested table or search does not fit the configured budget (CLI exit status 2).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotMultipleOfGcd : public DomainError {
public:
    using DomainError::DomainError;
};

class NotRepresentable : public DomainError {
public:
    using DomainError::DomainError;
};

class BelowFrobeniusRange : public NotRepresentable {
public:
    using NotRepresentable::NotRepresentable;
};

class LimitExceeded : public ResourceError {
public:
    using ResourceError::ResourceError;
};

/// An internal bound that the construction guarantees did not hold. Always a bug.
class InternalBoundViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace binpow
