#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdl {

/// Bad ids, malformed input files, parameters outside a generator's range.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation called on a state it is not defined for (e.g. an empty version space).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Measure not defined for the class, e.g. VC dimension of a multi-class table.
class UnsupportedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scripted learner or adversary broke the protocol at `step` (1-based).
class ProtocolError : public std::runtime_error {
public:
    ProtocolError(std::size_t step, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// A proven property of the theory failed to hold on a computed value.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Search budget exhausted. Carries the tightest bounds proven before stopping;
/// the true value lies in [lower, upper].
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, int lower, int upper, std::size_t states)
        : std::runtime_error(what + " (proven bounds [" + std::to_string(lower) + ", " +
                             std::to_string(upper) + "])"),
          lower_(lower), upper_(upper), states_(states) {}

    int lower() const noexcept { return lower_; }
    int upper() const noexcept { return upper_; }
    std::size_t states() const noexcept { return states_; }

private:
    int lower_;
    int upper_;
    std::size_t states_;
};

}  // namespace sdl
