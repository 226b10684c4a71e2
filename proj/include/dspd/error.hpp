#pragma once

#include <stdexcept>
#include <string>

namespace dspd {

/// Invalid argument or configuration value.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A value outside the domain an operation is defined on (e.g. negative degrees).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Input distributions for which the requested quantity is undefined.
class DegenerateInputError : public DomainError {
public:
    explicit DegenerateInputError(const std::string& what) : DomainError(what) {}
};

/// Shell recursion asked to go deeper than the contracted graph allows.
class DepthError : public std::runtime_error {
public:
    explicit DepthError(const std::string& what) : std::runtime_error(what) {}
};

class GenerationError : public std::runtime_error {
public:
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

/// Sampling ran out of undecided nodes before reaching the requested size.
class ExhaustionError : public std::runtime_error {
public:
    explicit ExhaustionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dspd
