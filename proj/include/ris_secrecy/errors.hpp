#pragma once

#include <stdexcept>
#include <string>

namespace ris {

// Numerical failure: a series or iteration did not meet its tolerance.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, int terms_used)
        : std::runtime_error(what + " (terms used: " + std::to_string(terms_used) + ")"),
          terms_used_(terms_used) {}

    int terms_used() const noexcept { return terms_used_; }

private:
    int terms_used_;
};

// The requested closed form is undefined for these parameters
// (e.g. SOP^inf with theta4 <= 0, ideal-hardware capacity without fallback).
class unsupported_regime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A SystemParams / SweepSpec / config field violates its invariant.
class invalid_parameter : public std::invalid_argument {
public:
    invalid_parameter(const std::string& field, const std::string& why)
        : std::invalid_argument(field + ": " + why), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace ris
