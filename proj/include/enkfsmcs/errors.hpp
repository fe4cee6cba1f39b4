#pragma once

#include <stdexcept>
#include <string>

namespace enkfsmcs {

// Cholesky factorization failed even after the jitter escalation ladder.
class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Weighted ensemble has effective sample size < 2 (or every weight is -inf).
class DegenerateEnsemble : public std::runtime_error {
public:
    explicit DegenerateEnsemble(const std::string& msg, int step = -1)
        : std::runtime_error(msg), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

// An ODE state became non-finite (diverging parameter draw).
class NonFiniteState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of a closed-form expression.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace enkfsmcs
