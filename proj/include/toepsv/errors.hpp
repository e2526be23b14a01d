#pragma once

#include <stdexcept>
#include <string>

namespace toepsv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A diagonal entry mu + m fell below the pivot floor.
class SingularDiagonal : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a formula (mu <= 0 in theta, x <= 0 in log_gamma, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace toepsv
