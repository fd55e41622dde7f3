#pragma once

#include <stdexcept>
#include <string>

namespace qmono {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: mismatched universes, malformed text, unknown names.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A value that cannot exist, e.g. a zero denominator factor.
class InvalidValueError : public Error {
public:
    using Error::Error;
};

/// A substitution sent a denominator factor to zero.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A configured enumeration cap would be exceeded.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// A series denominator has no constant term in the expansion variable.
class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// An operation was asked outside the hypotheses it is stated for.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

/// An internal invariant was broken; always a bug.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace qmono
