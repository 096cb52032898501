// Runs the verification suite twice with one seed and prints a line per criterion.
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "numrad/acceptance.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 0;
  const auto first = numrad::run_acceptance(seed);
  const auto second = numrad::run_acceptance(seed);
  auto criteria = first.criteria;
  criteria.push_back(numrad::determinism_outcome(first.payload().dump(), second.payload().dump()));

  bool all = true;
  for (const auto& c : criteria) {
    all = all && c.ok();
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "  ["
              << std::fixed << std::setprecision(2) << c.seconds << " s";
    if (!c.within_time()) {
      std::cout << ", limit " << c.time_limit << " s";
    }
    std::cout << "]\n";
    if (!c.passed) {
      std::cout << "  measured: " << c.measured.dump() << "\n";
    }
  }
  return all ? 0 : 1;
}
