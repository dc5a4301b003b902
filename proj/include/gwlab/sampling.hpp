#pragma once

#include <cstdint>
#include <random>

#include "gwlab/gw.hpp"

namespace gwlab {

// Deterministic RNG wrapper; all bounded draws go through next()/below() so
// reports are byte-identical across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  uint64_t next() { return g_(); }
  uint64_t below(uint64_t n) { return n ? g_() % n : 0; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(uint64_t(hi - lo + 1))); }
  bool coin() { return g_() & 1; }

 private:
  std::mt19937_64 g_;
};

// Nonzero element from a small height-weighted pool: squarefree integers in
// [-30, 30] over Q, arbitrary coefficients over F_p.
FieldElem random_elem(const TowerPtr& t, Rng& rng);
// Non-square element (for adjoining / disc targets).
FieldElem random_nonsquare(const TowerPtr& t, Rng& rng);

GWElem random_gw(const TowerPtr& t, Rng& rng, int max_len = 6);
// Product of n Pfister factors <a>-1 times a small element; lies in I^n.
GWElem random_in_In(const TowerPtr& t, Rng& rng, int n);
// Torsion element of I^n (signature-zero by construction).
GWElem random_torsion_In(const TowerPtr& t, Rng& rng, int n);
// Unit sample: +-<a>(1 + torsion I^2 element).
GWElem random_unit(const TowerPtr& t, Rng& rng);
// Element of F_2 = 1 + I^2_tor.
GWElem random_f2(const TowerPtr& t, Rng& rng);
// Element of F_n for n in {1, 2, 3}.
GWElem random_fn(const TowerPtr& t, Rng& rng, int n);
// Totally positive element (all signatures of <a> positive).
FieldElem random_totally_positive(const TowerPtr& t, Rng& rng);

}  // namespace gwlab
