#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "gwlab/errors.hpp"

namespace gwlab {

enum class BaseKind { Rationals, PrimeField };

struct BaseField {
  BaseKind kind = BaseKind::Rationals;
  long p = 0;  // odd prime when kind == PrimeField

  static BaseField rationals() { return {BaseKind::Rationals, 0}; }
  static BaseField prime_field(long p);
  bool operator==(const BaseField& o) const { return kind == o.kind && p == o.p; }
};

class FieldTower;
class FieldElem;
using TowerPtr = std::shared_ptr<const FieldTower>;

// A real embedding of a tower over Q: one sign per adjoined square root.
// Only towers whose adjoined elements stay positive along the sign path
// have embeddings; towers over F_p have none.
struct RealEmbedding {
  TowerPtr tower;
  std::vector<int> signs;  // +-1 per step, bottom-up
};

// k = Q or F_p, extended by a chain of square roots of non-squares.
// Immutable; extensions share the lower tower structurally.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  static TowerPtr make_base(BaseField b);
  // Adjoins sqrt(d); d must be a nonzero non-square in `lower`.
  static TowerPtr extend(const TowerPtr& lower, const FieldElem& d);

  const BaseField& base() const { return base_; }
  int height() const { return height_; }
  const TowerPtr& lower() const { return lower_; }    // null at height 0
  const FieldElem& step() const;                      // NoTopStep at height 0
  const std::vector<RealEmbedding>& embeddings() const { return embeddings_; }
  bool same_as(const FieldTower& o) const;
  // True if `o` is an initial segment of this tower.
  bool extends(const FieldTower& o) const;
  std::string name() const;  // "Q[sqrt 5]" style

 private:
  FieldTower() = default;
  BaseField base_;
  int height_ = 0;
  TowerPtr lower_;
  std::shared_ptr<FieldElem> step_;
  std::vector<RealEmbedding> embeddings_;
};

bool same_tower(const TowerPtr& a, const TowerPtr& b);

// Exact element of a FieldTower. Coefficient vector of length 2^height in the
// nested basis: an element of k(sqrt d) is (lo, hi) = lo + hi*sqrt(d) with
// lo, hi elements of the tower below. Over F_p the rationals are integer
// residues in [0, p).
class FieldElem {
 public:
  FieldElem() = default;  // invalid placeholder
  static FieldElem from_rational(const TowerPtr& t, const mpq_class& q);
  static FieldElem from_int(const TowerPtr& t, long n) { return from_rational(t, mpq_class(n)); }
  static FieldElem make(const TowerPtr& t, std::vector<mpq_class> coeffs);
  // sqrt of the top adjoined element, as an element of t.
  static FieldElem sqrt_gen(const TowerPtr& t);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool valid() const { return tower_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;
  bool equals(const FieldElem& o) const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;  // DivisionByZero
  FieldElem operator-() const;
  FieldElem inverse() const;

  FieldElem conj_step() const;   // (u,v) -> (u,-v); NoTopStep at height 0
  FieldElem norm_step() const;   // u^2 - v^2 d, one level down
  FieldElem trace_step() const;  // 2u, one level down

  // Embeds into a tower that extends this element's tower.
  FieldElem lift_to(const TowerPtr& target) const;
  // Inverse of lift_to for elements that are constants from `target`'s level.
  FieldElem descend_to(const TowerPtr& target) const;

  std::string str() const;

 private:
  TowerPtr tower_;
  std::vector<mpq_class> c_;
};

enum class ElemOp { Add, Sub, Mul, Div };
FieldElem elem_arith(const FieldElem& a, const FieldElem& b, ElemOp op);

bool is_square(const FieldElem& a);      // ZeroArgument on 0
FieldElem sqrt_of(const FieldElem& a);   // NotSquare unless is_square
FieldElem norm_elem(const FieldElem& a);
FieldElem trace_elem(const FieldElem& a);

const std::vector<RealEmbedding>& real_embeddings(const TowerPtr& t);
int sign_at(const FieldElem& a, const RealEmbedding& e);  // ZeroArgument on 0

}  // namespace gwlab
