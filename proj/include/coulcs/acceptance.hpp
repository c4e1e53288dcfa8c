#pragma once

// The twelve acceptance criteria as runnable checks. Each criterion is a
// list of measured quantities against pinned tolerances plus an optional
// wall-clock limit; informational measurements are carried as notes.

#include <string>
#include <vector>

namespace coulcs::acceptance {

struct Check {
  std::string label;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // reported, not gating
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;  // 0 means no limit
  bool pass = false;
};

inline constexpr int kCriterionCount = 12;

/// Runs criterion `id` (1..12); DomainError for other ids. Exceptions raised
/// inside a criterion turn into a failing check carrying the message.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

/// One line: "[PASS] 3 normalization: ... (0.41 s)".
std::string summary_line(const CriterionResult& r);

}  // namespace coulcs::acceptance
