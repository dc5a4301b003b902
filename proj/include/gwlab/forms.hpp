#pragma once

#include <vector>

#include "gwlab/fields.hpp"
#include "gwlab/localsymbols.hpp"

namespace gwlab {

enum class TriBool { False = 0, Unknown = 1, True = 2 };

inline TriBool tri(bool b) { return b ? TriBool::True : TriBool::False; }
inline TriBool tri_and(TriBool a, TriBool b) {
  if (a == TriBool::False || b == TriBool::False) return TriBool::False;
  if (a == TriBool::Unknown || b == TriBool::Unknown) return TriBool::Unknown;
  return TriBool::True;
}
const char* tri_name(TriBool t);

// Diagonal non-degenerate symmetric bilinear form; entry order is
// semantically irrelevant.
struct DiagForm {
  TowerPtr tower;
  std::vector<FieldElem> entries;

  static DiagForm make(TowerPtr t, std::vector<FieldElem> entries);
  static DiagForm empty(TowerPtr t) { return make(std::move(t), {}); }
  int dim() const { return static_cast<int>(entries.size()); }
};

// Complete equality certificate over the supported fields. `hasse` is
// populated only over Q itself (height 0); signatures follow the tower's
// real embedding order.
struct FormInvariants {
  int dim = 0;
  FieldElem disc;                            // signed discriminant square class
  mpz_class disc_q = 0;                      // squarefree representative over Q
  std::vector<std::pair<Place, int>> hasse;  // finite places, sorted
  std::vector<int> signatures;

  bool equal(const FormInvariants& o) const;
};

// Symmetric Gaussian elimination with the char != 2 pivot repair.
DiagForm diagonalize(const std::vector<std::vector<FieldElem>>& gram, const TowerPtr& t);

FormInvariants invariants(const DiagForm& f);

// Signed discriminant of a diagonal entry list.
FieldElem signed_disc(const TowerPtr& t, const std::vector<FieldElem>& entries);

// Hasse symbol prod_{i<j} (a_i, a_j)_v of rational entries.
int hasse_symbol(const std::vector<mpq_class>& entries, const Place& v);

// Isometry decision. Complete over Q (Hasse-Minkowski) and over F_p towers
// (dim + disc); three-valued over number-field towers of height >= 1.
TriBool isometric(const DiagForm& f1, const DiagForm& f2);

bool is_complete_equality_tower(const FieldTower& t);

}  // namespace gwlab
