#pragma once

#include "gwlab/etale.hpp"
#include "gwlab/sampling.hpp"

namespace gwlab {

struct TraceTerm {
  EtaleAlgebra algebra;
  int sign;  // +-1
};

// y = sum sign * tr(algebra) + constant, with constant in {0, 1}.
struct TraceDecomposition {
  std::vector<TraceTerm> terms;
  int constant = 0;
};

// Writes y as a signed sum of trace forms of degree <= 2 algebras plus a
// constant, entry by entry: <a> = tr(k(sqrt 2a)) - <2> generically, with the
// square-degenerate branches taken when a, 2a or 2 is a square. Verified by
// gw_equal where equality is complete.
TraceDecomposition trace_decompose(const GWElem& y);

// Alternative decomposition for well-definedness tests: adjoined elements are
// scaled by random squares and a cancelling tr(E) - tr(E) pair is inserted.
TraceDecomposition trace_decompose_randomized(const GWElem& y, Rng& rng);

GWElem exp_with(const GWElem& x, const TraceDecomposition& dec);

// The GW(k)-module action x^y on units, via x^{tr(A)} = N_{A/k}(x|_A).
GWElem exp(const GWElem& x, const GWElem& y);

// Fast path for rank-1 exponents <a>.
GWElem exp_by_square_class(const GWElem& x, const FieldElem& a);

}  // namespace gwlab
