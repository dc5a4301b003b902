#pragma once

#include <cstdint>
#include <map>

#include "gwlab/expmod.hpp"

namespace gwlab {

// Element of GW(k)[<t_1>,...,<t_m>]/(<t_i>^2 = 1): a sparse map from
// exponent bitmasks to GW(k) coefficients. Models the subring of
// GW(k(t_1,...,t_m)) generated by constants and the <t_i>; the coefficient
// representation is faithful there.
class GRElem {
 public:
  GRElem() = default;
  static GRElem zero(const TowerPtr& t, int vars);
  static GRElem one(const TowerPtr& t, int vars);
  static GRElem monomial(const TowerPtr& t, int vars, uint32_t mask);
  static GRElem embed(const GWElem& c, int vars);

  const TowerPtr& tower() const { return tower_; }
  int vars() const { return vars_; }
  const std::map<uint32_t, GWElem>& coeffs() const { return c_; }
  GWElem coeff(uint32_t mask) const;
  void set_coeff(uint32_t mask, const GWElem& c);
  bool is_constant() const;

  GRElem operator+(const GRElem& o) const;
  GRElem operator-(const GRElem& o) const;
  GRElem operator-() const;
  GRElem operator*(const GRElem& o) const;

  std::string str() const;

 private:
  TowerPtr tower_;
  int vars_ = 0;
  std::map<uint32_t, GWElem> c_;
};

enum class GROp { Add, Neg, Mul };
GRElem gr_arith(const GRElem& x, const GRElem& y, GROp op);

// P(m) = prod_i (<t_i> - 1) = sum_eps (-1)^{m-|eps|} <t^eps>.
GRElem P(const TowerPtr& t, int m);

// x = a + <t_i> b with a, b free of t_i: returns b (resp. a + b), with the
// remaining variables renumbered.
GRElem second_residue(const GRElem& x, int i);
GRElem specialize_one(const GRElem& x, int i);

TriBool gr_equal(const GRElem& x, const GRElem& y);

// Coefficientwise Scharlau transfer along the top quadratic step of the
// coefficient tower.
GRElem gr_transfer(const GRElem& x);
// Rost norm along the top quadratic step, by the Wittkop fold over the
// monomial generators <u t^eps>.
GRElem gr_norm(const GRElem& x);

// x^y inside the model for x a unit of GW(k) and y a group-ring exponent:
// monomial exponents go through the lambda^2 norm formula with trace forms
// tr(L(sqrt 2at^eps)) = <2> + <a t^eps> kept inside the model.
GRElem gr_exp(const GWElem& x, const GRElem& y);

// log_(m): the unique y with x^{P_m} = 1 + P_m y, extracted from the top
// coefficient and re-verified exactly (ExtractionMismatch on failure).
GWElem log_m(const GWElem& x, int m);

// Stable logarithm: log_m at m = 3r+1 with a one-step stability witness,
// r the torsion exponent of x - 1.
GWElem log(const GWElem& x);

}  // namespace gwlab
