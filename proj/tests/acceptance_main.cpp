// Acceptance suite: one line per criterion, non-zero exit on any failure.

#include <iostream>

#include "coulcs/acceptance.hpp"

int main() {
  bool ok = true;
  for (int id = 1; id <= coulcs::acceptance::kCriterionCount; ++id) {
    const auto r = coulcs::acceptance::run_criterion(id);
    std::cout << coulcs::acceptance::summary_line(r) << '\n';
    for (const auto& note : r.notes) std::cout << "       note: " << note << '\n';
    std::cout.flush();
    ok = ok && r.pass;
  }
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILED") << '\n';
  return ok ? 0 : 1;
}
