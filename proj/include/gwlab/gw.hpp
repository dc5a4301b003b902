#pragma once

#include <vector>

#include "gwlab/forms.hpp"

namespace gwlab {

// Element of GW(k) as a formal difference [plus] - [minus] of diagonal
// forms. Representation is non-canonical; equality is semantic. `level`
// is a construction-time certificate that the element lies in I^level;
// it never influences the public decision procedures, only internal
// compaction shortcuts.
class GWElem {
 public:
  GWElem() = default;
  static GWElem zero(const TowerPtr& t);
  static GWElem one(const TowerPtr& t);
  static GWElem integer(const TowerPtr& t, long n);
  static GWElem from_form(DiagForm f);
  static GWElem diff(DiagForm plus, DiagForm minus);
  static GWElem square_class(const FieldElem& a);          // <a>
  static GWElem hyperbolic(const TowerPtr& t);             // <1,-1>
  static GWElem pfister_factor(const FieldElem& a);        // <a> - 1, level 1

  const TowerPtr& tower() const { return tower_; }
  const DiagForm& plus() const { return plus_; }
  const DiagForm& minus() const { return minus_; }
  bool valid() const { return tower_ != nullptr; }
  int level() const { return level_; }
  GWElem with_level(int lvl) const;
  size_t size() const { return plus_.entries.size() + minus_.entries.size(); }

  GWElem operator+(const GWElem& o) const;
  GWElem operator-(const GWElem& o) const;
  GWElem operator-() const;
  GWElem operator*(const GWElem& o) const;

  std::string str() const;

 private:
  TowerPtr tower_;
  DiagForm plus_, minus_;
  int level_ = 0;
};

enum class GWOp { Add, Neg, Mul };
GWElem gw_arith(const GWElem& x, const GWElem& y, GWOp op);

TriBool gw_equal(const GWElem& x, const GWElem& y);
bool gw_is_zero(const GWElem& x);  // certified-zero only (see gw_equal)

long dim(const GWElem& x);
FieldElem disc(const GWElem& x);     // signed discriminant square class
mpz_class disc_q(const GWElem& x);   // squarefree representative, Q only
std::vector<int> signatures(const GWElem& x);

TriBool in_In(const GWElem& x, int n);
TriBool is_torsion(const GWElem& x);
int torsion_exponent(const GWElem& x);  // NotTorsion unless is_torsion

TriBool is_unit(const GWElem& x);
GWElem unit_inverse(const GWElem& x);   // NotAUnit
TriBool in_Fn(const GWElem& x, int n);
GWElem alpha_n(const GWElem& x, int n); // representative x-1; NotInFiltration

GWElem lambda2(const GWElem& x);

// Equal element with a small representation. Exact over complete-equality
// towers (invariant synthesis); pair cancellation plus the number-field
// torsion vanishing elsewhere.
GWElem compact(const GWElem& x);

// Attaches the I-power certificate that dim/disc checks can prove (level 1
// for dim 0, level 2 once the discriminant is trivial).
GWElem certify_ideal_level(const GWElem& x);

// 2-divisibility over Q, via the second-residue decomposition of W(Q).
bool in_2GW_Q(const GWElem& x);
bool in_2I_Q(const GWElem& x);
// Same questions over an F_p tower (complete invariants).
bool in_2GW_Fp(const GWElem& x);
bool in_2I_Fp(const GWElem& x);

}  // namespace gwlab
