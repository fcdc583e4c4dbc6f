#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace persym {

// Input does not describe a valid object (length mismatch, bad shape, ...).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A sweep was refused because its index space exceeds the bit budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, int required_bits, int budget_bits)
      : std::runtime_error(what + ": requires 2^" + std::to_string(required_bits) +
                           " instances, budget is 2^" + std::to_string(budget_bits)),
        required_bits_(required_bits),
        budget_bits_(budget_bits) {}

  int required_bits() const noexcept { return required_bits_; }
  int budget_bits() const noexcept { return budget_bits_; }

 private:
  int required_bits_;
  int budget_bits_;
};

// A closed form was evaluated outside its declared validity range, or an
// exact division that the formula promises did not come out even.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A rank distribution lacks entries that a computation needs.
class IncompleteSource : public std::invalid_argument {
 public:
  IncompleteSource(const std::string& what, std::vector<int> missing)
      : std::invalid_argument(what + ": missing ranks" + list(missing)), missing_(std::move(missing)) {}

  const std::vector<int>& missing_ranks() const noexcept { return missing_; }

 private:
  static std::string list(const std::vector<int>& ranks) {
    std::string out;
    for (int r : ranks) out += " " + std::to_string(r);
    return out;
  }
  std::vector<int> missing_;
};

}  // namespace persym
