#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace braidgen {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  double ms = 0.0;
};

struct SuiteOptions {
  std::vector<int> strand_counts;
  std::uint64_t seed = 12345;
  int jobs = 0;                  // 0 = library default
  std::size_t lk_bound = 64;     // word-length bound for the oracle checks
};

/// Runs the identity battery for the requested strand counts: background
/// relations, shift identities, the Theorem-2 suites, the appendix displays,
/// certificate sweeps, randomized conjugate expansions and pipeline rewrites,
/// and an oracle agreement sample. Deterministic for a fixed seed; check
/// order is fixed by construction, not completion.
std::vector<SuiteCheck> run_suite(const SuiteOptions& opts);

bool suite_all_pass(const std::vector<SuiteCheck>& checks);

}  // namespace braidgen
