#pragma once

#include <stdexcept>
#include <string>

namespace flrw {

/// Parameter outside the admissible range of the model.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A coefficient would require division by zero (e.g. alpha == 1).
class SingularParameterError : public DomainError {
public:
    explicit SingularParameterError(const std::string& what) : DomainError(what) {}
};

/// Input carries no information (all-zero quadratic, rank-deficient fit, empty grid).
class DegenerateInputError : public std::invalid_argument {
public:
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical run did not produce the outcome its caller requires
/// (horizon reached before blow-up, overflow outside detection, ...).
class RunFailure : public std::runtime_error {
public:
    explicit RunFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flrw
