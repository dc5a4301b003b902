#pragma once

#include "gwlab/gw.hpp"

namespace gwlab {

// Finite product of multiquadratic tower extensions of a common base field.
// Height-0 components are split factors; the trivial degree-2 algebra k x k
// is the two-component split case.
struct EtaleAlgebra {
  TowerPtr base;
  std::vector<TowerPtr> components;

  static EtaleAlgebra make(TowerPtr base, std::vector<TowerPtr> components);
  static EtaleAlgebra split(const TowerPtr& base, int copies);
  static EtaleAlgebra quadratic(const TowerPtr& base, const FieldElem& d);
  int degree() const;
  std::string name() const;
};

struct GWOverA {
  EtaleAlgebra algebra;
  std::vector<GWElem> parts;

  static GWOverA make(EtaleAlgebra a, std::vector<GWElem> parts);
  GWOverA operator+(const GWOverA& o) const;
  GWOverA operator*(const GWOverA& o) const;
};

GWOverA restrict_to(const GWElem& x, const EtaleAlgebra& A);

// Scharlau transfer along one quadratic step of the entry tower.
GWElem transfer_step(const GWElem& x);
// Rost norm along one quadratic step, by the Wittkop fold.
GWElem norm_step(const GWElem& x);

GWElem scharlau_transfer(const GWOverA& x);
GWElem trace_form(const EtaleAlgebra& A);
GWElem trace_form_step(const TowerPtr& l);  // tr of l over its lower tower

GWElem conj_gw(const GWElem& x);       // top-step conjugation; NoTopStep
GWOverA conj_gw(const GWOverA& x);     // swaps the two split factors of k x k

GWElem rost_norm(const GWOverA& x);

// N_{E/L}(x|_E) for a degree-2 E/L given only tr(E), via the lambda^2
// formula; E itself is never constructed.
GWElem norm_restricted(const GWElem& x, const GWElem& trE);

// Tambara distributivity instance for a degree-2 algebra: the exponential
// diagram for the fold map reduces to the norm additivity defect
// N(x+y) - N(x) - N(y) = tr(x conj(y)), evaluated through independent routes.
bool check_distributivity(const GWOverA& x, const GWOverA& y);

}  // namespace gwlab
