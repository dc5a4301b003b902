#include "gwlab/localsymbols.hpp"

#include <algorithm>
#include <set>

#include "gwlab/errors.hpp"
#include "gwlab/numtheory.hpp"

namespace gwlab {

int legendre(const mpz_class& a, const mpz_class& p) { return legendre_int(a, p); }

mpz_class square_class_Q(const mpq_class& a) {
  if (a == 0) fail(Errc::ZeroArgument, "square_class_Q(0)");
  return squarefree_part(a.get_num() * a.get_den());
}

long val_p(const mpq_class& a, const mpz_class& p) {
  if (a == 0) fail(Errc::ZeroArgument, "valuation of 0");
  long v = 0;
  mpz_class n = a.get_num();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  mpz_class d = a.get_den();
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

namespace {

// Unit part of a at p, reduced mod m (m = p for odd p, 8 for p = 2).
mpz_class unit_part_mod(const mpq_class& a, const mpz_class& p, const mpz_class& m) {
  long v = val_p(a, p);
  mpz_class num = a.get_num(), den = a.get_den();
  if (v > 0)
    for (long i = 0; i < v; ++i) num /= p;
  if (v < 0)
    for (long i = 0; i < -v; ++i) den /= p;
  mpz_class r = ((num % m) + m) % m;
  return r * inv_mod(((den % m) + m) % m, m) % m;
}

int eps2(const mpz_class& u) { return mpz_class((u - 1) / 2 % 2).get_si() ? -1 : 1; }
int omega2(const mpz_class& u) { return mpz_class((u * u - 1) / 8 % 2).get_si() ? -1 : 1; }

}  // namespace

int hilbert(const mpq_class& a, const mpq_class& b, const Place& v) {
  if (a == 0 || b == 0) fail(Errc::ZeroArgument, "hilbert symbol needs nonzero arguments");
  if (v.is_real) return (a < 0 && b < 0) ? -1 : 1;
  const mpz_class& p = v.p;
  long alpha = val_p(a, p), beta = val_p(b, p);
  if (p == 2) {
    mpz_class u = unit_part_mod(a, p, 8), w = unit_part_mod(b, p, 8);
    int r = 1;
    if (eps2(u) == -1 && eps2(w) == -1) r = -r;
    if (alpha % 2 && omega2(w) == -1) r = -r;
    if (beta % 2 && omega2(u) == -1) r = -r;
    return r;
  }
  mpz_class u = unit_part_mod(a, p, p), w = unit_part_mod(b, p, p);
  int r = 1;
  if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 == 1) r = -r;
  if (beta % 2) r *= legendre(u, p);
  if (alpha % 2) r *= legendre(w, p);
  return r;
}

std::vector<Place> relevant_places(const std::vector<mpq_class>& entries) {
  std::set<Place> out;
  out.insert(Place::real());
  out.insert(Place::finite(2));
  for (const auto& q : entries) {
    if (q == 0) fail(Errc::ZeroArgument, "relevant_places of 0");
    for (const auto& [pr, e] : factor(q.get_num() * q.get_den()))
      if (pr != 2) out.insert(Place::finite(pr));
  }
  return {out.begin(), out.end()};
}

}  // namespace gwlab
