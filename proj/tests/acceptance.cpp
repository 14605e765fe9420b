// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <iostream>

#include "spq/verify.hpp"

int main() {
  spq::Workspace ws;
  bool ok = true;
  for (const auto& criterion : spq::all_criteria()) {
    spq::CriterionResult r;
    try {
      r = criterion(ws);
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion: raised " << e.what() << "\n";
      ok = false;
      continue;
    }
    std::cout << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << "\n";
    for (const auto& c : r.checks)
      if (!c.pass) std::cout << "    " << c.name << ": expected " << c.expected << ", computed " << c.computed << "\n";
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}
