#ifndef EFBOUND_ERROR_HPP
#define EFBOUND_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace efbound {

// Malformed or inconsistent caller input (dimension mismatch, domain violation).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or search exceeded its configured limit. Carries the best
// bound established before giving up, when one exists.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what,
                       std::optional<long long> best_bound = std::nullopt)
      : std::runtime_error(what), best_bound_(best_bound) {}

  std::optional<long long> best_bound() const { return best_bound_; }

 private:
  std::optional<long long> best_bound_;
};

// A computed certificate failed exact re-verification. Indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace efbound

#endif  // EFBOUND_ERROR_HPP
