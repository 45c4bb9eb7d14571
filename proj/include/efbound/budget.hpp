#ifndef EFBOUND_BUDGET_HPP
#define EFBOUND_BUDGET_HPP

#include <chrono>
#include <optional>
#include <string>

namespace efbound::budget {

// Process-wide wall-clock deadline. Read once from EFBOUND_BUDGET_MS unless
// set explicitly; absent means unlimited.
void set_time_limit(std::optional<std::chrono::milliseconds> limit);
void init_from_env();
bool expired();

// Throws BudgetError naming `where` once the deadline has passed.
void check(const std::string& where);

}  // namespace efbound::budget

#endif  // EFBOUND_BUDGET_HPP
