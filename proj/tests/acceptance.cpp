// Runs the ten acceptance criteria and prints one line per criterion.
// Pass --quick to skip the lattice-sum oracle.

#include "hb/verify.hpp"

#include <cstring>
#include <iomanip>
#include <iostream>

int main(int argc, char** argv) {
  hb::VerifyOptions opt;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) opt.full = false;
  hb::AcceptanceSuite suite(opt);
  int failed = 0;
  for (int id = 1; id <= hb::AcceptanceSuite::kCount; ++id) {
    hb::CriterionResult c = suite.run(id);
    const char* status = !c.ran ? "SKIP" : c.pass ? "PASS" : "FAIL";
    std::cout << status << "  criterion " << std::setw(2) << id << "  " << std::left << std::setw(26) << c.name
              << std::right << std::setw(7) << c.checked << " checks  " << std::fixed << std::setprecision(2)
              << c.seconds << " s\n";
    for (auto& [k, v] : c.notes) std::cout << "        " << k << ": " << v << "\n";
    for (auto& f : c.failures) std::cout << "        failure: " << f << "\n";
    if (c.ran && !c.pass) ++failed;
  }
  std::cout << (failed ? "FAILED" : "OK") << "\n";
  return failed ? 1 : 0;
}
