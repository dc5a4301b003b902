#include "gwlab/sampling.hpp"

#include "gwlab/numtheory.hpp"

namespace gwlab {

namespace {

mpq_class random_base_coeff(const BaseField& b, Rng& rng, bool nonzero) {
  if (b.kind == BaseKind::PrimeField) {
    long v = rng.range(nonzero ? 1 : 0, b.p - 1);
    return mpq_class(v);
  }
  long v = 0;
  while (v == 0) {
    v = rng.range(-30, 30);
    if (!nonzero) break;
  }
  return mpq_class(squarefree_part(mpz_class(v == 0 ? 1 : v)) * (v == 0 ? 0 : 1));
}

}  // namespace

FieldElem random_elem(const TowerPtr& t, Rng& rng) {
  size_t n = size_t(1) << t->height();
  for (;;) {
    std::vector<mpq_class> c(n);
    for (size_t i = 0; i < n; ++i) {
      // lean towards sparse elements so norms stay desk-sized
      if (i == 0 || rng.below(3) == 0) c[i] = random_base_coeff(t->base(), rng, false);
    }
    FieldElem e = FieldElem::make(t, std::move(c));
    if (!e.is_zero()) return e;
  }
}

FieldElem random_nonsquare(const TowerPtr& t, Rng& rng) {
  for (int i = 0; i < 256; ++i) {
    FieldElem e = random_elem(t, rng);
    if (!is_square(e)) return e;
  }
  fail(Errc::SearchLimit, "no nonsquare sampled");
}

FieldElem random_totally_positive(const TowerPtr& t, Rng& rng) {
  for (int i = 0; i < 256; ++i) {
    FieldElem e = random_elem(t, rng);
    bool pos = true;
    for (const auto& emb : real_embeddings(t))
      if (sign_at(e, emb) < 0) pos = false;
    if (pos) return e;
  }
  fail(Errc::SearchLimit, "no totally positive element sampled");
}

GWElem random_gw(const TowerPtr& t, Rng& rng, int max_len) {
  int np = static_cast<int>(rng.below(max_len + 1));
  int nm = static_cast<int>(rng.below(max_len + 1));
  std::vector<FieldElem> p, m;
  for (int i = 0; i < np; ++i) p.push_back(random_elem(t, rng));
  for (int i = 0; i < nm; ++i) m.push_back(random_elem(t, rng));
  return GWElem::diff(DiagForm::make(t, std::move(p)), DiagForm::make(t, std::move(m)));
}

GWElem random_in_In(const TowerPtr& t, Rng& rng, int n) {
  GWElem acc = GWElem::pfister_factor(random_elem(t, rng));
  for (int i = 1; i < n; ++i) acc = acc * GWElem::pfister_factor(random_elem(t, rng));
  if (rng.coin()) acc = acc * GWElem::square_class(random_elem(t, rng));
  if (rng.coin()) acc = acc + acc;
  return acc;
}

GWElem random_torsion_In(const TowerPtr& t, Rng& rng, int n) {
  for (int tries = 0; tries < 256; ++tries) {
    // one totally positive Pfister factor forces all signatures to zero
    GWElem acc = GWElem::pfister_factor(random_totally_positive(t, rng));
    for (int i = 1; i < n; ++i) acc = acc * GWElem::pfister_factor(random_elem(t, rng));
    if (rng.coin()) acc = acc * GWElem::square_class(random_elem(t, rng));
    if (is_torsion(acc) != TriBool::True) continue;
    GWElem c = compact(acc);
    if (c.size() != 0 || tries > 16) return c;
  }
  fail(Errc::SearchLimit, "no torsion I^n sample");
}

GWElem random_unit(const TowerPtr& t, Rng& rng) {
  GWElem u = GWElem::square_class(random_elem(t, rng));
  if (rng.coin()) u = -u;
  if (rng.coin()) u = u * (GWElem::one(t) + random_torsion_In(t, rng, 2));
  return u;
}

GWElem random_f2(const TowerPtr& t, Rng& rng) {
  return GWElem::one(t) + random_torsion_In(t, rng, 2);
}

GWElem random_fn(const TowerPtr& t, Rng& rng, int n) {
  return GWElem::one(t) + random_torsion_In(t, rng, n);
}

}  // namespace gwlab
