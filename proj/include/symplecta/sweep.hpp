#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symplecta {

// One measured property. margin is |measured − bound| for equalities and the
// signed slack (positive when the inequality holds) otherwise.
struct SweepRow {
  std::string suite;
  std::string property;
  std::uint64_t seed = 0;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
};

const std::vector<std::string>& sweep_suites();

// Throws std::invalid_argument on an unknown suite.
std::vector<SweepRow> run_suite(const std::string& suite, std::uint64_t seed, double hbar);

// Seeds first..last inclusive, suites in the given order; "all" expands to every suite.
std::vector<SweepRow> run_sweep(const std::vector<std::string>& suites, std::uint64_t first,
                                std::uint64_t last, double hbar);

// "suite,property,seed,measured,bound,margin,pass" with %.17g numbers.
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace symplecta
