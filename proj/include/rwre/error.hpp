#pragma once

#include <stdexcept>
#include <string>

namespace rwre {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A letter code outside [0, d) for the presentation in use.
class InvalidLetter : public Error {
public:
    using Error::Error;
};

/// parent() was asked for the root.
class NoParent : public Error {
public:
    NoParent() : Error("the root has no parent") {}
};

/// Checked integer arithmetic overflowed.
class Overflow : public Error {
public:
    using Error::Error;
};

/// A parameter is outside its legal domain (bad presentation, bad Delta, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A computation would exceed its configured vertex budget.
class ResourceBudget : public Error {
public:
    using Error::Error;
};

/// A zero transition probability was met where log-integrability is needed.
class AssumptionViolated : public Error {
public:
    using Error::Error;
};

/// The ellipticity constant does not satisfy eps > 1/(2(d-1)).
class ConditionNotMet : public Error {
public:
    using Error::Error;
};

} // namespace rwre
