#include "gwlab/laurent.hpp"

#include <algorithm>
#include <set>

#include "gwlab/config.hpp"

namespace gwlab {

namespace {

void check_compatible(const GRElem& x, const GRElem& y) {
  if (!same_tower(x.tower(), y.tower())) fail(Errc::TowerMismatch, "group-ring towers differ");
  if (x.vars() != y.vars()) fail(Errc::ArityMismatch, "group-ring variable counts differ");
}

void check_vars(int m) {
  if (m < 0 || m > config().max_vars)
    fail(Errc::ArityMismatch, "variable count outside [0, " + std::to_string(config().max_vars) + "]");
}

// dim/disc are decidable over every supported tower, so I^2 membership of a
// coefficient can be certified on the fly; that keeps deep products of
// torsion coefficients collapsing inside GW arithmetic.
GWElem certify(const GWElem& c) { return certify_ideal_level(c); }

}  // namespace

GRElem GRElem::zero(const TowerPtr& t, int vars) {
  check_vars(vars);
  GRElem x;
  x.tower_ = t;
  x.vars_ = vars;
  return x;
}

GRElem GRElem::one(const TowerPtr& t, int vars) { return embed(GWElem::one(t), vars); }

GRElem GRElem::monomial(const TowerPtr& t, int vars, uint32_t mask) {
  GRElem x = zero(t, vars);
  if (mask >= (uint32_t(1) << vars)) fail(Errc::IndexOutOfRange, "monomial mask out of range");
  x.c_[mask] = GWElem::one(t);
  return x;
}

GRElem GRElem::embed(const GWElem& c, int vars) {
  GRElem x = zero(c.tower(), vars);
  if (c.size() != 0) x.c_[0] = c;
  return x;
}

GWElem GRElem::coeff(uint32_t mask) const {
  auto it = c_.find(mask);
  return it == c_.end() ? GWElem::zero(tower_) : it->second;
}

void GRElem::set_coeff(uint32_t mask, const GWElem& c) {
  if (mask >= (uint32_t(1) << vars_)) fail(Errc::IndexOutOfRange, "mask out of range");
  GWElem cc = compact(certify(c));
  if (cc.size() == 0)
    c_.erase(mask);
  else
    c_[mask] = cc;
}

bool GRElem::is_constant() const {
  for (const auto& [m, c] : c_)
    if (m != 0 && c.size() != 0) return false;
  return true;
}

GRElem GRElem::operator+(const GRElem& o) const {
  check_compatible(*this, o);
  GRElem out = *this;
  for (const auto& [m, c] : o.c_) {
    auto it = out.c_.find(m);
    out.set_coeff(m, it == out.c_.end() ? c : it->second + c);
  }
  return out;
}

GRElem GRElem::operator-() const {
  GRElem out = *this;
  for (auto& [m, c] : out.c_) c = -c;
  return out;
}

GRElem GRElem::operator-(const GRElem& o) const { return *this + (-o); }

GRElem GRElem::operator*(const GRElem& o) const {
  check_compatible(*this, o);
  GRElem out = zero(tower_, vars_);
  std::map<uint32_t, GWElem> acc;
  for (const auto& [m1, c1] : c_)
    for (const auto& [m2, c2] : o.c_) {
      GWElem prod = c1 * c2;
      if (prod.size() == 0) continue;
      uint32_t m = m1 ^ m2;
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(m, prod);
      else
        it->second = compact(certify(it->second + prod));
    }
  for (const auto& [m, c] : acc) out.set_coeff(m, c);
  return out;
}

GRElem gr_arith(const GRElem& x, const GRElem& y, GROp op) {
  switch (op) {
    case GROp::Add: return x + y;
    case GROp::Neg: return -x;
    case GROp::Mul: return x * y;
  }
  fail(Errc::Internal, "bad op");
}

GRElem P(const TowerPtr& t, int m) {
  if (m < 1) fail(Errc::ArityMismatch, "P(m) needs m >= 1");
  check_vars(m);
  GRElem out = GRElem::zero(t, m);
  for (uint32_t eps = 0; eps < (uint32_t(1) << m); ++eps) {
    int pop = __builtin_popcount(eps);
    out.set_coeff(eps, GWElem::integer(t, ((m - pop) % 2) ? -1 : 1));
  }
  return out;
}

namespace {

uint32_t drop_bit(uint32_t mask, int bit) {
  uint32_t low = mask & ((uint32_t(1) << bit) - 1);
  uint32_t high = mask >> (bit + 1);
  return low | (high << bit);
}

}  // namespace

GRElem second_residue(const GRElem& x, int i) {
  if (i < 1 || i > x.vars()) fail(Errc::IndexOutOfRange, "variable index");
  int bit = i - 1;
  GRElem out = GRElem::zero(x.tower(), x.vars() - 1);
  for (const auto& [m, c] : x.coeffs())
    if (m & (uint32_t(1) << bit)) out.set_coeff(drop_bit(m, bit), c);
  return out;
}

GRElem specialize_one(const GRElem& x, int i) {
  if (i < 1 || i > x.vars()) fail(Errc::IndexOutOfRange, "variable index");
  int bit = i - 1;
  GRElem out = GRElem::zero(x.tower(), x.vars() - 1);
  for (const auto& [m, c] : x.coeffs()) {
    uint32_t m2 = drop_bit(m, bit);
    out.set_coeff(m2, out.coeff(m2) + c);
  }
  return out;
}

TriBool gr_equal(const GRElem& x, const GRElem& y) {
  check_compatible(x, y);
  TriBool acc = TriBool::True;
  std::set<uint32_t> masks;
  for (const auto& [m, c] : x.coeffs()) masks.insert(m);
  for (const auto& [m, c] : y.coeffs()) masks.insert(m);
  for (uint32_t m : masks) acc = tri_and(acc, gw_equal(x.coeff(m), y.coeff(m)));
  return acc;
}

GRElem gr_transfer(const GRElem& x) {
  if (x.tower()->height() == 0) fail(Errc::NoTopStep, "gr_transfer at height 0");
  GRElem out = GRElem::zero(x.tower()->lower(), x.vars());
  for (const auto& [m, c] : x.coeffs()) out.set_coeff(m, transfer_step(c));
  return out;
}

namespace {

// rank-1 generator <u> <t^eps> of the group ring over l
struct GrGen {
  FieldElem u;
  uint32_t mask;
};

GRElem gens_to_gr(const TowerPtr& l, int vars, const std::vector<GrGen>& gens) {
  GRElem out = GRElem::zero(l, vars);
  for (const auto& g : gens)
    out.set_coeff(g.mask, out.coeff(g.mask) + GWElem::square_class(g.u));
  return out;
}

// N of a sum of positive rank-1 generators, by the Wittkop fold:
// N(h + g) = N(h) + N(g) + tr(h conj(g)).
GRElem norm_gen_list(const TowerPtr& l, int vars, const std::vector<GrGen>& gens) {
  const TowerPtr& k = l->lower();
  GRElem acc = GRElem::zero(k, vars);
  GRElem head = GRElem::zero(l, vars);
  for (size_t i = 0; i < gens.size(); ++i) {
    // N(<u t^eps>) = <u conj(u)>: the monomial square is a square class
    GRElem n1 = GRElem::embed(GWElem::square_class(gens[i].u.norm_step()), vars);
    if (i == 0) {
      acc = n1;
    } else {
      GRElem conj_g = GRElem::zero(l, vars);
      conj_g.set_coeff(gens[i].mask, GWElem::square_class(gens[i].u.conj_step()));
      acc = acc + n1 + gr_transfer(head * conj_g);
    }
    head.set_coeff(gens[i].mask, head.coeff(gens[i].mask) + GWElem::square_class(gens[i].u));
  }
  return acc;
}

}  // namespace

GRElem gr_norm(const GRElem& x) {
  const TowerPtr& l = x.tower();
  if (l->height() == 0) fail(Errc::NoTopStep, "gr_norm at height 0");
  const TowerPtr& k = l->lower();
  std::vector<GrGen> pos, neg;
  for (const auto& [m, c] : x.coeffs()) {
    for (const auto& e : c.plus().entries) pos.push_back({e, m});
    for (const auto& e : c.minus().entries) neg.push_back({e, m});
  }
  GRElem np = norm_gen_list(l, x.vars(), pos);
  if (neg.empty()) return np;
  GRElem nm = norm_gen_list(l, x.vars(), neg);
  GWElem n_minus_one = trace_form_step(l) - GWElem::one(k);
  GRElem nm_signed = GRElem::embed(n_minus_one, x.vars()) * nm;
  if (pos.empty()) return nm_signed;
  // cross term tr(pos * conj(neg)) with the Wittkop sign for y = -neg
  GRElem cross = gens_to_gr(l, x.vars(), pos);
  GRElem conj_neg = GRElem::zero(l, x.vars());
  for (const auto& g : neg)
    conj_neg.set_coeff(g.mask, conj_neg.coeff(g.mask) + GWElem::square_class(g.u.conj_step()));
  return np + nm_signed - gr_transfer(cross * conj_neg);
}

namespace {

// b^{<a t^eps>} for a unit b of GW(k), via <a t^eps> = tr(E1) - tr(E2) + 1
// with E1 = L(sqrt 2at^eps), E2 = L(sqrt 2). Only the trace forms enter:
// tr(E1) = <2> + <a t^eps> stays in the model, so the lambda^2 route applies.
GRElem pow_monomial(const GWElem& b, const GWElem& binv, const FieldElem& a, uint32_t mask,
                    int vars) {
  const TowerPtr& k = b.tower();
  GRElem trE1 = GRElem::zero(k, vars);
  trE1.set_coeff(0, GWElem::square_class(FieldElem::from_int(k, 2)));
  trE1.set_coeff(mask, GWElem::square_class(a));
  GWElem l2 = lambda2(b);
  GRElem f = GRElem::embed(compact(b * b - (l2 + l2)), vars) + GRElem::embed(l2, vars) * trE1;
  FieldElem two = FieldElem::from_int(k, 2);
  if (is_square(two)) {
    // <2> = 1: <a t^eps> = tr(E1) - 1
    return f * GRElem::embed(binv, vars);
  }
  GWElem trE2 = GWElem::square_class(two) + GWElem::one(k);
  GWElem n2inv = norm_restricted(binv, trE2);
  return f * GRElem::embed(compact(n2inv * b), vars);
}

}  // namespace

GRElem gr_exp(const GWElem& x, const GRElem& y) {
  if (is_unit(x) != TriBool::True) fail(Errc::NotAUnit, "gr_exp base must be a unit");
  if (!same_tower(x.tower(), y.tower())) fail(Errc::TowerMismatch, "gr_exp towers differ");
  int vars = y.vars();
  GRElem acc = GRElem::embed(exp(x, y.coeff(0)), vars);
  GWElem xinv = unit_inverse(x);
  for (const auto& [mask, c] : y.coeffs()) {
    if (mask == 0) continue;
    for (const auto& a : c.plus().entries) acc = acc * pow_monomial(x, xinv, a, mask, vars);
    for (const auto& a : c.minus().entries) acc = acc * pow_monomial(xinv, x, a, mask, vars);
  }
  return acc;
}

GWElem log_m(const GWElem& x, int m) {
  if (in_Fn(x, 2) != TriBool::True) fail(Errc::NotInF2, "log needs x in F_2 = 1 + I^2_tor");
  check_vars(m);
  if (m < 1) fail(Errc::ArityMismatch, "log_m needs m >= 1");
  GRElem g = gr_exp(x, P(x.tower(), m));
  uint32_t full = (uint32_t(1) << m) - 1;
  GWElem y = g.coeff(full);
  GRElem expect = GRElem::one(x.tower(), m) + P(x.tower(), m) * GRElem::embed(y, m);
  TriBool ok = gr_equal(g, expect);
  if (ok == TriBool::False) fail(Errc::ExtractionMismatch, "x^{P_m} is not of the form 1 + P_m y");
  if (ok == TriBool::Unknown)
    fail(Errc::Undecidable, "log verification undecidable over this tower");
  return y.with_level(2);
}

GWElem log(const GWElem& x) {
  if (in_Fn(x, 2) != TriBool::True) fail(Errc::NotInF2, "log needs x in F_2 = 1 + I^2_tor");
  GWElem w = x - GWElem::one(x.tower());
  int r = torsion_exponent(w.with_level(2));
  if (r == 0) return GWElem::zero(x.tower());
  int m = 3 * r + 1;
  GWElem y1 = log_m(x, m);
  GWElem y2 = log_m(x, m + 1);
  if (gw_equal(y1, y2) != TriBool::True)
    fail(Errc::Internal, "log did not stabilize at m = 3r+1");
  if (in_In(y1, 2) == TriBool::False || is_torsion(y1) != TriBool::True)
    fail(Errc::Internal, "log value escaped I^2_tor");
  return y1;
}

}  // namespace gwlab
