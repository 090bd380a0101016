#pragma once

#include <cstdint>

namespace snowsim::oracle {

struct SweepResult {
  uint64_t checks = 0;      // comparisons run
  uint64_t mismatches = 0;  // disagreements between rewrite and tableau
};

/// Measures every vertex of every connected labeled graph on up to max_n
/// vertices in both the Z and Y bases, comparing the graph rewrite rules
/// against the stabilizer tableau's canonical graph. max_n must be in
/// [1, 6]; six keeps the exhaustive sweep under a minute.
SweepResult verify_measurement_rules(int max_n);

}  // namespace snowsim::oracle
