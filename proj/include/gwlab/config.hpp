#pragma once

#include <cstdint>

namespace gwlab {

// Global limits. Mutable only at program start (CLI flag handling); all
// library code reads through config().
struct Config {
  int max_tower_height = 3;       // quadratic steps above the base field
  long trial_division_bound = 200000;
  int torsion_exponent_cap = 8;
  int max_vars = 12;              // group-ring variable cap
  int isometry_search_depth = 2;  // chain-equivalence witness search
  int isometry_search_nodes = 250;
  int geometric_series_cap = 16;
  std::size_t entry_guard = 200000;  // hard cap on diagonal entries per element
};

Config& config();

}  // namespace gwlab
