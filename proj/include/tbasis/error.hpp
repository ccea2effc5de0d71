#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tbasis {

/// Invalid input: out-of-range parameters, malformed specs, bad indices.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Valid input that fails numerically: vanishing denominators, degenerate
/// weight pyramids, exhausted positivity budgets.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weight positivity could not be reached within the elevation budget.
/// `offending` holds the (multi-)indices of the non-positive weights at the
/// last order tried.
class positivity_error : public numerical_error {
public:
    positivity_error(const std::string& what, std::vector<std::vector<std::size_t>> offending)
        : numerical_error(what), offending_(std::move(offending)) {}

    const std::vector<std::vector<std::size_t>>& offending() const noexcept { return offending_; }

private:
    std::vector<std::vector<std::size_t>> offending_;
};

}  // namespace tbasis
