#include "gwlab/presentation.hpp"

namespace gwlab {

void CheckReport::record(const std::string& what, bool pass, const std::string& detail) {
  ++samples;
  if (!pass) ++failures;
  cases.push_back({what, pass, detail});
}

std::pair<GWElem, GWElem> decompose_unit(const GWElem& x) {
  if (is_unit(x) != TriBool::True) fail(Errc::NotAUnit, "decompose_unit of a non-unit");
  const TowerPtr& k = x.tower();
  GWElem one = GWElem::one(k);
  long n = dim(x) == 1 ? 0 : 1;
  GWElem z1 = (n == 0) ? x : -x;
  // t = -(<d> - 1) with d the I/I^2 class of z1 - 1
  FieldElem d = disc(z1 - one);
  GWElem t = one - GWElem::square_class(d);
  GWElem z = compact(exp(-one, t) * z1);
  GWElem y = compact(GWElem::integer(k, n) - t);
  if (in_Fn(z, 2) != TriBool::True) fail(Errc::Internal, "decompose_unit residual missed F_2");
  if (gw_equal(compact(exp(-one, y) * z), x) != TriBool::True)
    fail(Errc::Internal, "decompose_unit reassembly failed");
  return {y, z};
}

namespace {

bool in_2GW(const GWElem& x) {
  return x.tower()->base().kind == BaseKind::PrimeField ? in_2GW_Fp(x) : in_2GW_Q(x);
}
bool in_2I(const GWElem& x) {
  return x.tower()->base().kind == BaseKind::PrimeField ? in_2I_Fp(x) : in_2I_Q(x);
}

}  // namespace

CheckReport check_presentation(const TowerPtr& k, int samples, uint64_t seed) {
  if (!is_complete_equality_tower(*k))
    fail(Errc::TowerMismatch, "presentation checks need a complete-equality field");
  Rng rng(seed);
  CheckReport rep;
  rep.name = "presentation";
  rep.identity = "I^2 -> GW/2 (+) F_2 GW^x -> GW^x -> 1 exact";
  GWElem one = GWElem::one(k);
  for (int i = 0; i < samples; ++i) {
    switch (rng.below(4)) {
      case 0: {  // surjectivity of r/s via the decomposition
        GWElem u = random_unit(k, rng);
        auto [y, z] = decompose_unit(u);
        bool pass = gw_equal(compact(exp(-one, y) * z), u) == TriBool::True &&
                    in_Fn(z, 2) == TriBool::True;
        rep.record("surjectivity", pass, u.str());
        break;
      }
      case 1: {  // r is well-defined on GW/2: adding 2w changes nothing
        GWElem x = random_gw(k, rng, 4);
        GWElem w = random_gw(k, rng, 3);
        bool pass = gw_equal(exp(-one, x + w + w), exp(-one, x)) == TriBool::True;
        rep.record("r well-defined mod 2", pass);
        break;
      }
      case 2: {  // composite (r/s)(p (+) q) = 1 on I^2 samples, fresh lift for p
        GWElem x = random_in_In(k, rng, 2);
        GWElem w = random_gw(k, rng, 2);
        GWElem img = compact(exp(-one, x + w + w));   // r on another lift of p(x)
        GWElem qimg = compact(exp(-one, x));          // q(x) = (-1)^x, lands in F_2
        bool pass = in_Fn(qimg, 2) == TriBool::True &&
                    gw_equal(compact(img * unit_inverse(qimg)), one) == TriBool::True;
        rep.record("composite trivial", pass);
        break;
      }
      case 3: {  // middle exactness: (-1)^x in F_2 forces x in 2Z.1 + I^2
        GWElem x = rng.coin() ? random_gw(k, rng, 4)
                              : compact(GWElem::integer(k, 2 * rng.range(-2, 2)) +
                                        random_in_In(k, rng, 2));
        GWElem img = exp(-one, x);
        if (in_Fn(img, 2) != TriBool::True) {
          rep.record("middle exactness (not in F_2)", true);
          break;
        }
        bool pass = dim(x) % 2 == 0;
        if (pass) {
          FieldElem d = disc(x - GWElem::integer(k, dim(x)));
          pass = !d.is_zero() && is_square(d);
        }
        rep.record("middle exactness", pass, x.str());
        break;
      }
    }
  }
  return rep;
}

CheckReport check_T0_sequence(const TowerPtr& k, int samples, uint64_t seed) {
  if (!is_complete_equality_tower(*k))
    fail(Errc::TowerMismatch, "T0 sequence checks need a complete-equality field");
  Rng rng(seed);
  CheckReport rep;
  rep.name = "t0-sequence";
  rep.identity = "0 -> I^2/2I -> GW/2 (+) I^2_tor -> GW^x -> 1 exact";
  GWElem one = GWElem::one(k);
  GWElem two_cls = GWElem::square_class(FieldElem::from_int(k, 2)) - one;  // <2> - 1
  for (int i = 0; i < samples; ++i) {
    switch (rng.below(4)) {
      case 0: {  // (-1)^x = 1 + (<2>-1) x for x in I^2
        GWElem x = random_in_In(k, rng, 2);
        bool pass = gw_equal(exp(-one, x), one + two_cls * x) == TriBool::True;
        rep.record("(-1)^x = 1 + (<2>-1)x on I^2", pass);
        break;
      }
      case 1: {  // surjectivity of (w, v) -> (-1)^w (1 + v)
        GWElem u = random_unit(k, rng);
        auto [y, z] = decompose_unit(u);
        GWElem v = z - one;  // in I^2_tor
        bool pass = in_In(v, 2) == TriBool::True && is_torsion(v) == TriBool::True &&
                    gw_equal(compact(exp(-one, y) * (one + v)), u) == TriBool::True;
        rep.record("surjectivity", pass);
        break;
      }
      case 2: {  // image of I^2 maps to 1: (-1)^x (1 + (<2>-1)x) = 1
        GWElem x = random_in_In(k, rng, 2);
        GWElem img = compact(exp(-one, x) * (one + two_cls * x));
        rep.record("kernel image trivial", gw_equal(img, one) == TriBool::True);
        break;
      }
      case 3: {  // injectivity: x in I^2, x in 2GW, (<2>-1)x = 0 => x in 2I
        GWElem x;
        if (rng.coin()) {
          GWElem w = random_in_In(k, rng, 1);  // x = 2w satisfies all hypotheses
          x = compact(w + w);
        } else {
          x = random_in_In(k, rng, 2);
        }
        if (in_In(x, 2) != TriBool::True) {
          rep.record("injectivity (not I^2)", true);
          break;
        }
        bool hyp = in_2GW(x) && gw_is_zero(compact(two_cls * x));
        if (!hyp) {
          rep.record("injectivity (hypotheses fail)", true);
          break;
        }
        rep.record("injectivity", in_2I(x), x.str());
        break;
      }
    }
  }
  // the sqrt(2) degeneration: over fields with 2 a square, (-1)^{I^2} = 1
  if (is_square(FieldElem::from_int(k, 2))) {
    for (int i = 0; i < std::min(samples, 25); ++i) {
      GWElem x = random_in_In(k, rng, 2);
      rep.record("(-1)^{I^2} = 1 when sqrt 2 exists",
                 gw_equal(exp(-one, x), one) == TriBool::True);
    }
  }
  return rep;
}

}  // namespace gwlab
