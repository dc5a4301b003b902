#include "gwlab/forms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "gwlab/config.hpp"
#include "gwlab/numtheory.hpp"

namespace gwlab {

const char* tri_name(TriBool t) {
  switch (t) {
    case TriBool::False: return "False";
    case TriBool::Unknown: return "Unknown";
    case TriBool::True: return "True";
  }
  return "?";
}

DiagForm DiagForm::make(TowerPtr t, std::vector<FieldElem> entries) {
  for (const auto& e : entries) {
    if (!same_tower(e.tower(), t)) fail(Errc::TowerMismatch, "form entry from another tower");
    if (e.is_zero()) fail(Errc::DegenerateForm, "diagonal entries must be nonzero");
  }
  return DiagForm{std::move(t), std::move(entries)};
}

DiagForm diagonalize(const std::vector<std::vector<FieldElem>>& gram_in, const TowerPtr& t) {
  size_t n = gram_in.size();
  for (const auto& row : gram_in)
    if (row.size() != n) fail(Errc::NotSymmetric, "gram matrix is not square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!gram_in[i][j].equals(gram_in[j][i])) fail(Errc::NotSymmetric, "gram matrix is not symmetric");

  auto g = gram_in;
  std::vector<FieldElem> diag;
  for (size_t i = 0; i < n; ++i) {
    if (g[i][i].is_zero()) {
      size_t sw = i;
      for (size_t j = i + 1; j < n && sw == i; ++j)
        if (!g[j][j].is_zero()) sw = j;
      if (sw != i) {
        std::swap(g[i], g[sw]);
        for (auto& row : g) std::swap(row[i], row[sw]);
      } else {
        size_t part = i;
        for (size_t j = i + 1; j < n && part == i; ++j)
          if (!g[i][j].is_zero()) part = j;
        if (part == i) fail(Errc::DegenerateForm, "zero row during elimination");
        // add row/col `part` into i; the new pivot is 2 g[i][part] != 0
        for (size_t k = 0; k < n; ++k) g[i][k] = g[i][k] + g[part][k];
        for (size_t k = 0; k < n; ++k) g[k][i] = g[k][i] + g[k][part];
      }
    }
    FieldElem piv = g[i][i];
    for (size_t j = i + 1; j < n; ++j) {
      if (g[i][j].is_zero()) continue;
      FieldElem f = g[i][j] / piv;
      for (size_t k = i; k < n; ++k) g[j][k] = g[j][k] - f * g[i][k];
      for (size_t k = i; k < n; ++k) g[k][j] = g[k][j] - f * g[k][i];
    }
    diag.push_back(piv);
  }
  return DiagForm::make(t, std::move(diag));
}

FieldElem signed_disc(const TowerPtr& t, const std::vector<FieldElem>& entries) {
  FieldElem d = FieldElem::from_int(t, 1);
  for (const auto& e : entries) d = d * e;
  size_t n = entries.size();
  if ((n * (n - 1) / 2) % 2) d = -d;
  return d;
}

int hasse_symbol(const std::vector<mpq_class>& entries, const Place& v) {
  // prod_{i<j} (a_i, a_j)_v = prod_j (a_1 ... a_{j-1}, a_j)_v
  int s = 1;
  mpq_class prefix = 1;
  for (size_t j = 0; j < entries.size(); ++j) {
    if (j) s *= hilbert(prefix, entries[j], v);
    prefix = mpq_class(square_class_Q(prefix * entries[j]));
  }
  return s;
}

namespace {

std::vector<mpq_class> rational_entries(const DiagForm& f) {
  std::vector<mpq_class> out;
  out.reserve(f.entries.size());
  for (const auto& e : f.entries) out.push_back(e.coeffs()[0]);
  return out;
}

}  // namespace

FormInvariants invariants(const DiagForm& f) {
  FormInvariants inv;
  inv.dim = f.dim();
  inv.disc = signed_disc(f.tower, f.entries);
  const FieldTower& t = *f.tower;
  if (t.base().kind == BaseKind::Rationals && t.height() == 0) {
    inv.disc_q = f.entries.empty() ? mpz_class(1) : square_class_Q(inv.disc.coeffs()[0]);
    auto ent = rational_entries(f);
    for (const auto& v : relevant_places(ent))
      if (!v.is_real) inv.hasse.emplace_back(v, hasse_symbol(ent, v));
  }
  for (const auto& e : real_embeddings(f.tower)) {
    int s = 0;
    for (const auto& a : f.entries) s += sign_at(a, e);
    inv.signatures.push_back(s);
  }
  return inv;
}

bool FormInvariants::equal(const FormInvariants& o) const {
  if (dim != o.dim || signatures != o.signatures) return false;
  if (disc.valid() && o.disc.valid()) {
    FieldElem prod = disc * o.disc;
    if (prod.is_zero() || !is_square(prod)) return false;
  }
  std::map<Place, int> h1(hasse.begin(), hasse.end()), h2(o.hasse.begin(), o.hasse.end());
  std::set<Place> places;
  for (auto& [p, s] : h1) places.insert(p);
  for (auto& [p, s] : h2) places.insert(p);
  for (const auto& p : places) {
    int a = h1.count(p) ? h1[p] : 1;
    int b = h2.count(p) ? h2[p] : 1;
    if (a != b) return false;
  }
  return true;
}

bool is_complete_equality_tower(const FieldTower& t) {
  if (t.base().kind == BaseKind::PrimeField) return true;
  return t.height() == 0;
}

namespace {

bool square_class_equal(const FieldElem& a, const FieldElem& b) {
  FieldElem p = a * b;
  return !p.is_zero() && is_square(p);
}

// Multiset comparison of entries up to squares.
bool entries_match(std::vector<FieldElem> a, std::vector<FieldElem> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (square_class_equal(x, *it)) {
        b.erase(it);
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Removes pairs matching up to squares across the two entry lists.
void cancel_common(std::vector<FieldElem>& a, std::vector<FieldElem>& b) {
  for (size_t i = 0; i < a.size();) {
    bool hit = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (square_class_equal(a[i], b[j])) {
        a.erase(a.begin() + i);
        b.erase(b.begin() + j);
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
}

// Bounded chain-equivalence search: <a,b> ~ <c, abc> whenever c = a x^2 + b y^2
// is nonzero. States are entry multisets; candidates come from a small (x, y)
// pool. Returns True on a witness chain, Unknown on budget exhaustion.
TriBool chain_search(const DiagForm& f, const DiagForm& g) {
  std::vector<FieldElem> start = f.entries, target = g.entries;
  cancel_common(start, target);
  if (start.empty() && target.empty()) return TriBool::True;

  const TowerPtr& t = f.tower;
  std::vector<FieldElem> pool;
  for (long v : {0L, 1L, -1L, 2L, -2L, 3L}) pool.push_back(FieldElem::from_int(t, v));
  pool.push_back(FieldElem::from_rational(t, mpq_class(1, 2)));
  if (t->height() >= 1) {
    FieldElem s = FieldElem::sqrt_gen(t);
    pool.push_back(s);
    pool.push_back(s + FieldElem::from_int(t, 1));
  }

  struct Node {
    std::vector<FieldElem> entries;
    int depth;
  };
  std::deque<Node> queue{{start, 0}};
  int budget = config().isometry_search_nodes;
  while (!queue.empty() && budget-- > 0) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    {
      auto aa = cur.entries;
      auto bb = target;
      cancel_common(aa, bb);
      if (aa.empty() && bb.empty()) return TriBool::True;
    }
    if (cur.depth >= config().isometry_search_depth) continue;
    for (size_t i = 0; i < cur.entries.size(); ++i) {
      for (size_t j = i + 1; j < cur.entries.size(); ++j) {
        for (const auto& x : pool) {
          for (const auto& y : pool) {
            FieldElem c = cur.entries[i] * x * x + cur.entries[j] * y * y;
            if (c.is_zero()) continue;
            if (square_class_equal(c, cur.entries[i])) continue;
            std::vector<FieldElem> next = cur.entries;
            FieldElem other = cur.entries[i] * cur.entries[j] * c;
            next[i] = c;
            next[j] = other;
            queue.push_back({std::move(next), cur.depth + 1});
          }
        }
      }
    }
  }
  return TriBool::Unknown;
}

}  // namespace

TriBool isometric(const DiagForm& f1, const DiagForm& f2) {
  if (!same_tower(f1.tower, f2.tower)) fail(Errc::TowerMismatch, "isometry across towers");
  if (f1.dim() != f2.dim()) return TriBool::False;
  const FieldTower& t = *f1.tower;
  FormInvariants i1 = invariants(f1), i2 = invariants(f2);
  if (t.base().kind == BaseKind::PrimeField) {
    // dim + discriminant classify forms over finite fields
    return tri(i1.equal(i2));
  }
  if (t.height() == 0) {
    // Hasse-Minkowski over Q: dim, disc, Hasse symbols, signature are complete
    return tri(i1.equal(i2));
  }
  if (!i1.equal(i2)) return TriBool::False;
  if (entries_match(f1.entries, f2.entries)) return TriBool::True;
  return chain_search(f1, f2);
}

}  // namespace gwlab
