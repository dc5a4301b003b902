#include "gwlab/fields.hpp"

#include <algorithm>
#include <cassert>

#include "gwlab/config.hpp"
#include "gwlab/numtheory.hpp"

namespace gwlab {

namespace {

using Coeffs = std::vector<mpq_class>;

mpq_class base_reduce(const BaseField& b, const mpq_class& q) {
  if (b.kind == BaseKind::Rationals) return q;
  // residue in [0, p): q must have denominator invertible mod p
  mpz_class p(b.p);
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class r = ((num % p) + p) % p;
  if (den != 1) r = r * inv_mod(((den % p) + p) % p, p) % p;
  return mpq_class(r);
}

mpq_class base_add(const BaseField& b, const mpq_class& x, const mpq_class& y) {
  return base_reduce(b, x + y);
}
mpq_class base_sub(const BaseField& b, const mpq_class& x, const mpq_class& y) {
  return base_reduce(b, x - y);
}
mpq_class base_mul(const BaseField& b, const mpq_class& x, const mpq_class& y) {
  return base_reduce(b, x * y);
}
mpq_class base_inv(const BaseField& b, const mpq_class& x) {
  if (x == 0) fail(Errc::DivisionByZero, "base inverse of 0");
  if (b.kind == BaseKind::Rationals) return 1 / x;
  return mpq_class(inv_mod(x.get_num(), mpz_class(b.p)));
}

Coeffs half_lo(const Coeffs& a) { return Coeffs(a.begin(), a.begin() + a.size() / 2); }
Coeffs half_hi(const Coeffs& a) { return Coeffs(a.begin() + a.size() / 2, a.end()); }
Coeffs glue(Coeffs lo, const Coeffs& hi) {
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}
bool all_zero(const Coeffs& a) {
  return std::all_of(a.begin(), a.end(), [](const mpq_class& q) { return q == 0; });
}

Coeffs add_c(const FieldTower* t, const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = base_add(t->base(), a[i], b[i]);
  return out;
}
Coeffs sub_c(const FieldTower* t, const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = base_sub(t->base(), a[i], b[i]);
  return out;
}
Coeffs neg_c(const FieldTower* t, const Coeffs& a) {
  Coeffs out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = base_sub(t->base(), 0, a[i]);
  return out;
}

Coeffs mul_c(const FieldTower* t, const Coeffs& a, const Coeffs& b) {
  if (t->height() == 0) return {base_mul(t->base(), a[0], b[0])};
  const FieldTower* lo = t->lower().get();
  Coeffs a0 = half_lo(a), a1 = half_hi(a), b0 = half_lo(b), b1 = half_hi(b);
  const Coeffs& d = t->step().coeffs();
  Coeffs low = add_c(lo, mul_c(lo, a0, b0), mul_c(lo, mul_c(lo, a1, b1), d));
  Coeffs high = add_c(lo, mul_c(lo, a0, b1), mul_c(lo, a1, b0));
  return glue(std::move(low), high);
}

Coeffs inv_c(const FieldTower* t, const Coeffs& a) {
  if (all_zero(a)) fail(Errc::DivisionByZero, "inverse of 0");
  if (t->height() == 0) return {base_inv(t->base(), a[0])};
  const FieldTower* lo = t->lower().get();
  Coeffs a0 = half_lo(a), a1 = half_hi(a);
  if (all_zero(a1)) return glue(inv_c(lo, a0), Coeffs(a1.size(), mpq_class(0)));
  const Coeffs& d = t->step().coeffs();
  // (a0 + a1 s)^-1 = (a0 - a1 s)/(a0^2 - a1^2 d); the norm is nonzero since
  // d is a non-square below.
  Coeffs n = sub_c(lo, mul_c(lo, a0, a0), mul_c(lo, mul_c(lo, a1, a1), d));
  Coeffs ni = inv_c(lo, n);
  return glue(mul_c(lo, a0, ni), neg_c(lo, mul_c(lo, a1, ni)));
}

bool is_square_c(const FieldTower* t, const Coeffs& a);
Coeffs sqrt_c(const FieldTower* t, const Coeffs& a);

bool base_is_square(const BaseField& b, const mpq_class& q) {
  if (b.kind == BaseKind::Rationals) {
    if (q <= 0) return q == 0 ? true : false;
    return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(q.get_den().get_mpz_t());
  }
  if (q == 0) return true;
  return legendre_int(q.get_num(), mpz_class(b.p)) == 1;
}

mpq_class base_sqrt(const BaseField& b, const mpq_class& q) {
  if (b.kind == BaseKind::Rationals) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    return mpq_class(n) / mpq_class(d);
  }
  return mpq_class(sqrt_mod(q.get_num(), mpz_class(b.p)));
}

bool is_square_c(const FieldTower* t, const Coeffs& a) {
  if (all_zero(a)) return true;
  if (t->height() == 0) return base_is_square(t->base(), a[0]);
  const FieldTower* lo = t->lower().get();
  Coeffs a0 = half_lo(a), a1 = half_hi(a);
  const Coeffs& d = t->step().coeffs();
  if (all_zero(a1))
    return is_square_c(lo, a0) || is_square_c(lo, mul_c(lo, a0, d));
  Coeffs n = sub_c(lo, mul_c(lo, a0, a0), mul_c(lo, mul_c(lo, a1, a1), d));
  if (!is_square_c(lo, n)) return false;
  Coeffs c = sqrt_c(lo, n);
  Coeffs two_inv(a0.size(), mpq_class(0));
  two_inv[0] = base_inv(t->base(), mpq_class(2));
  Coeffs h1 = mul_c(lo, add_c(lo, a0, c), two_inv);
  Coeffs h2 = mul_c(lo, sub_c(lo, a0, c), two_inv);
  return is_square_c(lo, h1) || is_square_c(lo, h2);
}

Coeffs sqrt_c(const FieldTower* t, const Coeffs& a) {
  if (all_zero(a)) return Coeffs(a.size(), mpq_class(0));
  if (t->height() == 0) return {base_sqrt(t->base(), a[0])};
  const FieldTower* lo = t->lower().get();
  Coeffs a0 = half_lo(a), a1 = half_hi(a);
  const Coeffs& d = t->step().coeffs();
  Coeffs zero(a0.size(), mpq_class(0));
  if (all_zero(a1)) {
    if (is_square_c(lo, a0)) return glue(sqrt_c(lo, a0), zero);
    Coeffs v = sqrt_c(lo, mul_c(lo, a0, inv_c(lo, d)));
    return glue(zero, std::move(v));
  }
  Coeffs n = sub_c(lo, mul_c(lo, a0, a0), mul_c(lo, mul_c(lo, a1, a1), d));
  Coeffs c = sqrt_c(lo, n);
  Coeffs two_inv(a0.size(), mpq_class(0));
  two_inv[0] = base_inv(t->base(), mpq_class(2));
  Coeffs h = mul_c(lo, add_c(lo, a0, c), two_inv);
  if (!is_square_c(lo, h)) h = mul_c(lo, sub_c(lo, a0, c), two_inv);
  Coeffs u = sqrt_c(lo, h);
  Coeffs v = mul_c(lo, a1, inv_c(lo, add_c(lo, u, u)));
  return glue(std::move(u), std::move(v));
}

int sign_c(const FieldTower* t, const Coeffs& a, const std::vector<int>& signs) {
  if (t->height() == 0) return sgn(a[0]);
  const FieldTower* lo = t->lower().get();
  Coeffs a0 = half_lo(a), a1 = half_hi(a);
  int s = signs[t->height() - 1];
  if (all_zero(a1)) return sign_c(lo, a0, signs);
  if (all_zero(a0)) return s * sign_c(lo, a1, signs);
  int s0 = sign_c(lo, a0, signs);
  int s1 = s * sign_c(lo, a1, signs);
  if (s0 == s1) return s0;
  // opposite contributions: compare a0^2 against a1^2 d
  const Coeffs& d = t->step().coeffs();
  Coeffs diff = sub_c(lo, mul_c(lo, a0, a0), mul_c(lo, mul_c(lo, a1, a1), d));
  return sign_c(lo, diff, signs) > 0 ? s0 : s1;
}

}  // namespace

BaseField BaseField::prime_field(long p) {
  if (p < 3 || p % 2 == 0 || !is_probable_prime(mpz_class(p)))
    fail(Errc::NotPrime, "F_p needs an odd prime, got " + std::to_string(p));
  return {BaseKind::PrimeField, p};
}

TowerPtr FieldTower::make_base(BaseField b) {
  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->base_ = b;
  t->height_ = 0;
  if (b.kind == BaseKind::Rationals) t->embeddings_.push_back(RealEmbedding{t, {}});
  return t;
}

TowerPtr FieldTower::extend(const TowerPtr& lower, const FieldElem& d) {
  if (!lower) fail(Errc::Internal, "extend(null tower)");
  if (!same_tower(lower, d.tower())) fail(Errc::TowerMismatch, "adjoined element lives elsewhere");
  if (d.is_zero()) fail(Errc::ZeroArgument, "cannot adjoin sqrt(0)");
  if (lower->height() + 1 > config().max_tower_height)
    fail(Errc::HeightLimit, "tower height limit " + std::to_string(config().max_tower_height));
  if (is_square(d))
    fail(Errc::NotSquare, "adjoined element " + d.str() + " is a square; use a split algebra instead");
  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->base_ = lower->base();
  t->height_ = lower->height() + 1;
  t->lower_ = lower;
  t->step_ = std::make_shared<FieldElem>(d);
  for (const auto& e : lower->embeddings_) {
    if (sign_at(d, e) > 0) {
      for (int s : {+1, -1}) {
        RealEmbedding ext{t, e.signs};
        ext.signs.push_back(s);
        t->embeddings_.push_back(std::move(ext));
      }
    }
  }
  return t;
}

const FieldElem& FieldTower::step() const {
  if (height_ == 0) fail(Errc::NoTopStep, "base field has no adjoined step");
  return *step_;
}

bool FieldTower::same_as(const FieldTower& o) const {
  if (this == &o) return true;
  if (!(base_ == o.base_) || height_ != o.height_) return false;
  if (height_ == 0) return true;
  return lower_->same_as(*o.lower_) && step_->coeffs() == o.step_->coeffs();
}

bool FieldTower::extends(const FieldTower& o) const {
  const FieldTower* t = this;
  while (t->height() > o.height()) t = t->lower().get();
  return t->same_as(o);
}

std::string FieldTower::name() const {
  if (height_ == 0)
    return base_.kind == BaseKind::Rationals ? "Q" : "F" + std::to_string(base_.p);
  return lower_->name() + "[sqrt " + step_->str() + "]";
}

bool same_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

FieldElem FieldElem::from_rational(const TowerPtr& t, const mpq_class& q) {
  FieldElem e;
  e.tower_ = t;
  e.c_.assign(size_t(1) << t->height(), mpq_class(0));
  e.c_[0] = base_reduce(t->base(), q);
  return e;
}

FieldElem FieldElem::make(const TowerPtr& t, std::vector<mpq_class> coeffs) {
  if (coeffs.size() != (size_t(1) << t->height()))
    fail(Errc::ArityMismatch, "coefficient count must be 2^height");
  FieldElem e;
  e.tower_ = t;
  for (auto& q : coeffs) q = base_reduce(t->base(), q);
  e.c_ = std::move(coeffs);
  return e;
}

FieldElem FieldElem::sqrt_gen(const TowerPtr& t) {
  if (t->height() == 0) fail(Errc::NoTopStep, "base field has no sqrt generator");
  FieldElem e;
  e.tower_ = t;
  e.c_.assign(size_t(1) << t->height(), mpq_class(0));
  e.c_[e.c_.size() / 2] = 1;
  return e;
}

bool FieldElem::is_zero() const { return all_zero(c_); }

bool FieldElem::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FieldElem::equals(const FieldElem& o) const {
  if (!same_tower(tower_, o.tower_)) fail(Errc::TowerMismatch, "comparing across towers");
  return c_ == o.c_;
}

static void check_same(const FieldElem& a, const FieldElem& b) {
  if (!same_tower(a.tower(), b.tower())) fail(Errc::TowerMismatch, "element towers differ");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(*this, o);
  return make(tower_, add_c(tower_.get(), c_, o.c_));
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(*this, o);
  return make(tower_, sub_c(tower_.get(), c_, o.c_));
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(*this, o);
  return make(tower_, mul_c(tower_.get(), c_, o.c_));
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  check_same(*this, o);
  return *this * o.inverse();
}
FieldElem FieldElem::operator-() const { return make(tower_, neg_c(tower_.get(), c_)); }
FieldElem FieldElem::inverse() const { return make(tower_, inv_c(tower_.get(), c_)); }

FieldElem FieldElem::conj_step() const {
  if (tower_->height() == 0) fail(Errc::NoTopStep, "conj_step at height 0");
  Coeffs out = c_;
  const BaseField& b = tower_->base();
  for (size_t i = out.size() / 2; i < out.size(); ++i) out[i] = base_sub(b, 0, out[i]);
  return make(tower_, std::move(out));
}

FieldElem FieldElem::norm_step() const {
  if (tower_->height() == 0) fail(Errc::NoTopStep, "norm_step at height 0");
  const FieldTower* lo = tower_->lower().get();
  Coeffs a0 = half_lo(c_), a1 = half_hi(c_);
  const Coeffs& d = tower_->step().coeffs();
  return make(tower_->lower(), sub_c(lo, mul_c(lo, a0, a0), mul_c(lo, mul_c(lo, a1, a1), d)));
}

FieldElem FieldElem::trace_step() const {
  if (tower_->height() == 0) fail(Errc::NoTopStep, "trace_step at height 0");
  const FieldTower* lo = tower_->lower().get();
  Coeffs a0 = half_lo(c_);
  return make(tower_->lower(), add_c(lo, a0, a0));
}

FieldElem FieldElem::lift_to(const TowerPtr& target) const {
  if (!target->extends(*tower_)) fail(Errc::TowerMismatch, "lift target does not extend source");
  Coeffs out = c_;
  out.resize(size_t(1) << target->height(), mpq_class(0));
  return make(target, std::move(out));
}

FieldElem FieldElem::descend_to(const TowerPtr& target) const {
  if (!tower_->extends(*target)) fail(Errc::TowerMismatch, "descend target is not a prefix");
  size_t n = size_t(1) << target->height();
  for (size_t i = n; i < c_.size(); ++i)
    if (c_[i] != 0) fail(Errc::Internal, "element is not constant over target level");
  return make(target, Coeffs(c_.begin(), c_.begin() + n));
}

std::string FieldElem::str() const {
  if (tower_->height() == 0) {
    return c_[0].get_str();
  }
  FieldElem lo = FieldElem::make(tower_->lower(), half_lo(c_));
  FieldElem hi = FieldElem::make(tower_->lower(), half_hi(c_));
  if (hi.is_zero()) return lo.str();
  std::string s;
  std::string sq = "sqrt" + std::to_string(tower_->height());
  if (hi.is_one())
    s = sq;
  else
    s = "(" + hi.str() + ")*" + sq;
  if (lo.is_zero()) return s;
  return "(" + lo.str() + ") + " + s;
}

FieldElem elem_arith(const FieldElem& a, const FieldElem& b, ElemOp op) {
  switch (op) {
    case ElemOp::Add: return a + b;
    case ElemOp::Sub: return a - b;
    case ElemOp::Mul: return a * b;
    case ElemOp::Div: return a / b;
  }
  fail(Errc::Internal, "bad op");
}

bool is_square(const FieldElem& a) {
  if (a.is_zero()) fail(Errc::ZeroArgument, "is_square(0)");
  return is_square_c(a.tower().get(), a.coeffs());
}

FieldElem sqrt_of(const FieldElem& a) {
  if (a.is_zero()) return a;
  if (!is_square(a)) fail(Errc::NotSquare, a.str() + " is not a square");
  return FieldElem::make(a.tower(), sqrt_c(a.tower().get(), a.coeffs()));
}

FieldElem norm_elem(const FieldElem& a) { return a.norm_step(); }
FieldElem trace_elem(const FieldElem& a) { return a.trace_step(); }

const std::vector<RealEmbedding>& real_embeddings(const TowerPtr& t) { return t->embeddings(); }

int sign_at(const FieldElem& a, const RealEmbedding& e) {
  if (a.is_zero()) fail(Errc::ZeroArgument, "sign_at(0)");
  if (!same_tower(a.tower(), e.tower) && !e.tower->extends(*a.tower()))
    fail(Errc::TowerMismatch, "embedding belongs to a different tower");
  return sign_c(a.tower().get(), a.coeffs(), e.signs);
}

}  // namespace gwlab
