#include "gwlab/expmod.hpp"

#include "gwlab/numtheory.hpp"

namespace gwlab {

namespace {

// Normalizes the adjoined element by stripping rational square content so
// k(sqrt 4a) is built as k(sqrt a).
FieldElem normalize_adjoined(const FieldElem& a) {
  const TowerPtr& t = a.tower();
  if (t->height() == 0) {
    const mpq_class& q = a.coeffs()[0];
    if (t->base().kind == BaseKind::Rationals)
      return FieldElem::from_rational(t, mpq_class(square_class_Q(q)));
    return a;
  }
  // divide out the square content of the coefficient vector
  mpz_class num_g = 0, den_l = 1;
  for (const auto& q : a.coeffs()) {
    if (q != 0) num_g = gcd(num_g, q.get_num());
    den_l = lcm(den_l, q.get_den());
  }
  if (num_g == 0) return a;
  mpq_class scale(den_l, num_g);
  mpq_class s2 = scale * scale;
  std::vector<mpq_class> c;
  for (const auto& q : a.coeffs()) c.push_back(q * s2);
  return FieldElem::make(t, std::move(c));
}

struct DecomposeCtx {
  Rng* rng = nullptr;  // randomized variant when set
};

void decompose_entry(const FieldElem& a, int sign, const TowerPtr& k,
                     std::vector<TraceTerm>& terms, long& integer_acc, DecomposeCtx& ctx) {
  FieldElem two = FieldElem::from_int(k, 2);
  auto quad = [&](FieldElem d) {
    d = normalize_adjoined(d);
    if (ctx.rng) {
      long s = ctx.rng->range(1, 3);
      d = d * FieldElem::from_int(k, s * s);
    }
    return EtaleAlgebra::quadratic(k, d);
  };
  auto emit_two = [&](int s) {
    // <2> = tr(k(sqrt 2)) - 1, or 1 when 2 is already a square
    if (is_square(two))
      integer_acc += s;
    else {
      terms.push_back({quad(two), s});
      integer_acc -= s;
    }
  };
  if (is_square(a)) {
    integer_acc += sign;
    return;
  }
  if (is_square(two * a)) {
    emit_two(sign);
    return;
  }
  // generic branch: <a> = tr(k(sqrt 2a)) - <2>
  terms.push_back({quad(two * a), sign});
  emit_two(-sign);
}

TraceDecomposition decompose(const GWElem& y, DecomposeCtx ctx) {
  const TowerPtr& k = y.tower();
  TraceDecomposition dec;
  long integer_acc = 0;
  for (const auto& a : y.plus().entries) decompose_entry(a, +1, k, dec.terms, integer_acc, ctx);
  for (const auto& a : y.minus().entries) decompose_entry(a, -1, k, dec.terms, integer_acc, ctx);

  // cancel opposite-sign terms over the same algebra
  for (size_t i = 0; i < dec.terms.size();) {
    bool hit = false;
    for (size_t j = i + 1; j < dec.terms.size(); ++j) {
      if (dec.terms[i].sign != dec.terms[j].sign &&
          dec.terms[i].algebra.components.size() == dec.terms[j].algebra.components.size() &&
          dec.terms[i].algebra.components[0]->same_as(*dec.terms[j].algebra.components[0])) {
        dec.terms.erase(dec.terms.begin() + j);
        dec.terms.erase(dec.terms.begin() + i);
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }

  if (ctx.rng) {
    // cancelling pair tr(E) - tr(E): same trace class through two objects
    FieldElem r = random_nonsquare(k, *ctx.rng);
    dec.terms.push_back({EtaleAlgebra::quadratic(k, normalize_adjoined(r)), +1});
    dec.terms.push_back({EtaleAlgebra::quadratic(k, normalize_adjoined(r)), -1});
  }

  // fold the integer part via 2 = tr(k x k)
  dec.constant = ((integer_acc % 2) + 2) % 2;
  long q = (integer_acc - dec.constant) / 2;
  for (long i = 0; i < std::labs(q); ++i)
    dec.terms.push_back({EtaleAlgebra::split(k, 2), q > 0 ? +1 : -1});

  if (is_complete_equality_tower(*k)) {
    GWElem check = GWElem::integer(k, dec.constant);
    for (const auto& t : dec.terms)
      check = t.sign > 0 ? check + trace_form(t.algebra) : check - trace_form(t.algebra);
    if (gw_equal(check, y) != TriBool::True)
      fail(Errc::Internal, "trace decomposition failed its reassembly check");
  }
  return dec;
}

}  // namespace

TraceDecomposition trace_decompose(const GWElem& y) { return decompose(y, {}); }

TraceDecomposition trace_decompose_randomized(const GWElem& y, Rng& rng) {
  DecomposeCtx ctx;
  ctx.rng = &rng;
  return decompose(y, ctx);
}

namespace {

// sign * <delta> * (1 + w) with w a certified torsion I^2 element; keeps
// long unit products telescoping over towers, where deep torsion products
// vanish inside GW multiplication.
struct UnitNF {
  int sign = 1;
  FieldElem delta;
  GWElem w;

  static UnitNF of(const GWElem& f) {
    long d = dim(f);
    if (d != 1 && d != -1) fail(Errc::NotAUnit, "norm factor is not a unit");
    GWElem z = (d == 1) ? f : -f;
    FieldElem delta = disc(z);
    const FieldTower& t = *f.tower();
    if (t.height() == 0 && t.base().kind == BaseKind::Rationals)
      delta = FieldElem::from_rational(f.tower(), mpq_class(square_class_Q(delta.coeffs()[0])));
    GWElem w =
        compact(certify_ideal_level(z * GWElem::square_class(delta) - GWElem::one(f.tower())));
    return {d < 0 ? -1 : 1, delta, w};
  }
  UnitNF mul(const UnitNF& o) const {
    GWElem cross = w + o.w + w * o.w;  // w * o.w dies at level 4 over towers
    return {sign * o.sign, delta * o.delta, compact(certify_ideal_level(cross))};
  }
  GWElem value(const TowerPtr& k) const {
    GWElem v = GWElem::square_class(delta) * (GWElem::one(k) + w);
    return compact(sign < 0 ? -v : v);
  }
};

}  // namespace

GWElem exp_with(const GWElem& x, const TraceDecomposition& dec) {
  if (is_unit(x) != TriBool::True) fail(Errc::NotAUnit, "exponentiation base must be a unit");
  const TowerPtr& k = x.tower();
  bool need_inv = dec.constant < 0;
  for (const auto& t : dec.terms) need_inv |= t.sign < 0;
  GWElem xinv = need_inv ? unit_inverse(x) : GWElem();
  if (is_complete_equality_tower(*k)) {
    GWElem acc = dec.constant == 1 ? x : GWElem::one(k);
    for (const auto& t : dec.terms) {
      const GWElem& base = t.sign > 0 ? x : xinv;
      acc = compact(acc * rost_norm(restrict_to(base, t.algebra)));
    }
    return acc;
  }
  UnitNF acc = UnitNF::of(dec.constant == 1 ? x : GWElem::one(k));
  for (const auto& t : dec.terms) {
    const GWElem& base = t.sign > 0 ? x : xinv;
    acc = acc.mul(UnitNF::of(rost_norm(restrict_to(base, t.algebra))));
  }
  return acc.value(k);
}

GWElem exp(const GWElem& x, const GWElem& y) { return exp_with(x, trace_decompose(y)); }

GWElem exp_by_square_class(const GWElem& x, const FieldElem& a) {
  if (a.is_zero()) fail(Errc::ZeroArgument, "exp_by_square_class(x, 0)");
  if (is_square(a)) {
    if (is_unit(x) != TriBool::True) fail(Errc::NotAUnit, "exponentiation base must be a unit");
    return x;
  }
  return exp(x, GWElem::square_class(a));
}

}  // namespace gwlab
