#pragma once

#include <string>
#include <vector>

#include "gwlab/laurent.hpp"

namespace gwlab {

// x = (-1)^y z with z in F_2, following the filtration descent: strip the
// sign via dim, then kill the I/I^2 class of x-1 with a rank-1 twist.
std::pair<GWElem, GWElem> decompose_unit(const GWElem& x);

struct CheckCase {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::string name;
  std::string identity;
  int samples = 0;
  int failures = 0;
  std::vector<CheckCase> cases;

  bool ok() const { return failures == 0; }
  void record(const std::string& what, bool pass, const std::string& detail = "");
};

// Samples the exact sequence I^2 -> GW/2 (+) F_2 -> GW^x -> 1: surjectivity
// via decompose_unit, well-definedness of x -> (-1)^x on GW/2, kernel and
// middle-exactness certificates.
CheckReport check_presentation(const TowerPtr& k, int samples, uint64_t seed);

// Samples the sequence 0 -> I^2/2I -> GW/2 (+) I^2_tor -> GW^x -> 1:
// (-1)^x = 1 + (<2>-1)x on I^2, surjectivity of (w,v) -> (-1)^w (1+v),
// kernel image, and injectivity of the first map.
CheckReport check_T0_sequence(const TowerPtr& k, int samples, uint64_t seed);

}  // namespace gwlab
