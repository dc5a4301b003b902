#include "gwlab/etale.hpp"

#include <algorithm>

namespace gwlab {

EtaleAlgebra EtaleAlgebra::make(TowerPtr base, std::vector<TowerPtr> components) {
  if (components.empty()) fail(Errc::ArityMismatch, "etale algebra needs at least one component");
  for (const auto& c : components)
    if (!c->extends(*base)) fail(Errc::TowerMismatch, "component does not extend the base field");
  return EtaleAlgebra{std::move(base), std::move(components)};
}

EtaleAlgebra EtaleAlgebra::split(const TowerPtr& base, int copies) {
  return make(base, std::vector<TowerPtr>(copies, base));
}

EtaleAlgebra EtaleAlgebra::quadratic(const TowerPtr& base, const FieldElem& d) {
  return make(base, {FieldTower::extend(base, d)});
}

int EtaleAlgebra::degree() const {
  int d = 0;
  for (const auto& c : components) d += 1 << (c->height() - base->height());
  return d;
}

std::string EtaleAlgebra::name() const {
  std::string s;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) s += " x ";
    s += components[i]->name();
  }
  return s;
}

GWOverA GWOverA::make(EtaleAlgebra a, std::vector<GWElem> parts) {
  if (parts.size() != a.components.size()) fail(Errc::ArityMismatch, "one part per component");
  for (size_t i = 0; i < parts.size(); ++i)
    if (!same_tower(parts[i].tower(), a.components[i]))
      fail(Errc::TowerMismatch, "part lives over the wrong component");
  return GWOverA{std::move(a), std::move(parts)};
}

GWOverA GWOverA::operator+(const GWOverA& o) const {
  std::vector<GWElem> out;
  for (size_t i = 0; i < parts.size(); ++i) out.push_back(parts[i] + o.parts[i]);
  return make(algebra, std::move(out));
}

GWOverA GWOverA::operator*(const GWOverA& o) const {
  std::vector<GWElem> out;
  for (size_t i = 0; i < parts.size(); ++i) out.push_back(parts[i] * o.parts[i]);
  return make(algebra, std::move(out));
}

GWOverA restrict_to(const GWElem& x, const EtaleAlgebra& A) {
  if (!same_tower(x.tower(), A.base)) fail(Errc::TowerMismatch, "restriction base mismatch");
  std::vector<GWElem> parts;
  for (const auto& comp : A.components) {
    auto lift_form = [&](const DiagForm& f) {
      std::vector<FieldElem> ents;
      for (const auto& e : f.entries) ents.push_back(e.lift_to(comp));
      return DiagForm::make(comp, std::move(ents));
    };
    parts.push_back(
        GWElem::diff(lift_form(x.plus()), lift_form(x.minus())).with_level(x.level()));
  }
  return GWOverA::make(A, std::move(parts));
}

GWElem transfer_step(const GWElem& x) {
  const TowerPtr& l = x.tower();
  if (l->height() == 0) fail(Errc::NoTopStep, "transfer_step at height 0");
  const TowerPtr& k = l->lower();
  FieldElem s = FieldElem::sqrt_gen(l);
  FieldElem d = l->step();
  auto tr_entry = [&](const FieldElem& c) {
    // Gram matrix of tr(c x y) on the basis {1, sqrt d}
    FieldElem t11 = c.trace_step();
    FieldElem t12 = (c * s).trace_step();
    FieldElem t22 = (c * d.lift_to(l)).trace_step();
    return diagonalize({{t11, t12}, {t12, t22}}, k);
  };
  auto tr_form = [&](const DiagForm& f) {
    GWElem acc = GWElem::zero(k);
    for (const auto& c : f.entries) acc = acc + GWElem::from_form(tr_entry(c));
    return acc;
  };
  // Arason: transfers preserve the fundamental-ideal filtration
  return (tr_form(x.plus()) - tr_form(x.minus())).with_level(x.level());
}

GWElem trace_form_step(const TowerPtr& l) {
  return transfer_step(GWElem::one(l));
}

GWElem scharlau_transfer(const GWOverA& x) {
  GWElem acc = GWElem::zero(x.algebra.base);
  for (const auto& part : x.parts) {
    GWElem y = part;
    while (y.tower()->height() > x.algebra.base->height()) y = compact(transfer_step(y));
    acc = acc + y;
  }
  return compact(acc);
}

GWElem trace_form(const EtaleAlgebra& A) {
  std::vector<GWElem> ones;
  for (const auto& c : A.components) ones.push_back(GWElem::one(c));
  return scharlau_transfer(GWOverA::make(A, std::move(ones)));
}

GWElem conj_gw(const GWElem& x) {
  if (x.tower()->height() == 0) fail(Errc::NoTopStep, "conj_gw at height 0");
  auto conj_form = [&](const DiagForm& f) {
    std::vector<FieldElem> ents;
    for (const auto& e : f.entries) ents.push_back(e.conj_step());
    return DiagForm::make(f.tower, std::move(ents));
  };
  return GWElem::diff(conj_form(x.plus()), conj_form(x.minus())).with_level(x.level());
}

GWOverA conj_gw(const GWOverA& x) {
  if (x.algebra.components.size() == 2 &&
      x.algebra.components[0]->height() == x.algebra.base->height()) {
    return GWOverA::make(x.algebra, {x.parts[1], x.parts[0]});
  }
  std::vector<GWElem> out;
  for (const auto& p : x.parts) out.push_back(conj_gw(p));
  return GWOverA::make(x.algebra, std::move(out));
}

namespace {

// Rost norm of a genuine diagonal form along one quadratic step, folding
// entries with N(f + <a>) = N(f) + <N(a)> + tr(f <conj a>).
GWElem norm_form_step(const DiagForm& f, const TowerPtr& k) {
  if (f.entries.empty()) return GWElem::zero(k);
  GWElem acc = GWElem::square_class(f.entries[0].norm_step());
  for (size_t i = 1; i < f.entries.size(); ++i) {
    const FieldElem& a = f.entries[i];
    std::vector<FieldElem> cross;
    for (size_t j = 0; j < i; ++j) cross.push_back(f.entries[j] * a.conj_step());
    GWElem tr = transfer_step(GWElem::from_form(DiagForm::make(f.tower, std::move(cross))));
    acc = compact(acc + GWElem::square_class(a.norm_step()) + tr);
  }
  return acc;
}

}  // namespace

GWElem norm_step(const GWElem& x) {
  const TowerPtr& l = x.tower();
  if (l->height() == 0) fail(Errc::NoTopStep, "norm_step at height 0");
  const TowerPtr& k = l->lower();
  GWElem np = norm_form_step(x.plus(), k);
  if (x.minus().entries.empty()) return np;
  GWElem nm = norm_form_step(x.minus(), k);
  GWElem n_minus_one = trace_form_step(l) - GWElem::one(k);  // N(-1) = tr(A) - 1
  if (x.plus().entries.empty()) return compact(n_minus_one * nm);
  // Wittkop with y = -minus: N(p - m) = N(p) + N(-1)N(m) - tr(p conj(m))
  std::vector<FieldElem> cross;
  for (const auto& u : x.plus().entries)
    for (const auto& v : x.minus().entries) cross.push_back(u * v.conj_step());
  GWElem tr = transfer_step(GWElem::from_form(DiagForm::make(l, std::move(cross))));
  return compact(np + n_minus_one * nm - tr);
}

GWElem rost_norm(const GWOverA& x) {
  const TowerPtr& base = x.algebra.base;
  GWElem acc = GWElem::one(base);
  for (const auto& part : x.parts) {
    GWElem y = part;
    while (y.tower()->height() > base->height()) y = norm_step(y);
    acc = compact(acc * y);
  }
  return acc;
}

GWElem norm_restricted(const GWElem& x, const GWElem& trE) {
  if (!same_tower(x.tower(), trE.tower())) fail(Errc::TowerMismatch, "norm_restricted towers differ");
  if (dim(trE) != 2) fail(Errc::BadTraceForm, "trace form of a degree-2 algebra has dimension 2");
  GWElem l2 = lambda2(x);
  GWElem out = x * x - (l2 + l2) + l2 * trE;
  if (dim(out) != dim(x) * dim(x)) fail(Errc::Internal, "norm_restricted dimension drift");
  return compact(out);
}

bool check_distributivity(const GWOverA& x, const GWOverA& y) {
  if (x.algebra.degree() != 2) fail(Errc::OddDegree, "distributivity check needs a degree-2 algebra");
  GWElem lhs = rost_norm(x + y);
  GWElem cross = scharlau_transfer(x * conj_gw(y));
  GWElem rhs = rost_norm(x) + rost_norm(y) + cross;
  return gw_equal(lhs, rhs) == TriBool::True;
}

}  // namespace gwlab
