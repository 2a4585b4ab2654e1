#pragma once

#include <stdexcept>
#include <string>

namespace rrg {

// Thrown when an exhaustive computation would exceed its work budget.
// `required` is the amount of work the call would have needed, in the same
// unit as the budget it was checked against (histories, tuples, assignments).
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(const std::string& what, unsigned long long required_,
                   unsigned long long budget_)
        : std::runtime_error(what), required(required_), budget(budget_) {}
    unsigned long long required;
    unsigned long long budget;
};

}  // namespace rrg
