#include "efbound/budget.hpp"

#include <atomic>
#include <cstdlib>

#include "efbound/error.hpp"

namespace efbound::budget {
namespace {

using Clock = std::chrono::steady_clock;

std::atomic<long long> g_deadline_ns{0};  // 0 = unlimited

}  // namespace

void set_time_limit(std::optional<std::chrono::milliseconds> limit) {
  if (!limit) {
    g_deadline_ns = 0;
    return;
  }
  auto deadline = Clock::now() + *limit;
  g_deadline_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      deadline.time_since_epoch())
                      .count();
}

void init_from_env() {
  const char* raw = std::getenv("EFBOUND_BUDGET_MS");
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  long long ms = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || ms <= 0) {
    throw InputError("EFBOUND_BUDGET_MS must be a positive integer");
  }
  set_time_limit(std::chrono::milliseconds(ms));
}

bool expired() {
  long long deadline = g_deadline_ns.load(std::memory_order_relaxed);
  if (deadline == 0) return false;
  auto now = std::chrono::duration_cast<std::chrono::nanoseconds>(
                 Clock::now().time_since_epoch())
                 .count();
  return now > deadline;
}

void check(const std::string& where) {
  if (expired()) throw BudgetError("time budget exhausted in " + where);
}

}  // namespace efbound::budget
