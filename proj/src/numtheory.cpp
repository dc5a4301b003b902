#include "gwlab/numtheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "gwlab/config.hpp"
#include "gwlab/errors.hpp"

namespace gwlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::TowerMismatch: return "TowerMismatch";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::NoTopStep: return "NoTopStep";
    case Errc::HeightLimit: return "HeightLimit";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotSquare: return "NotSquare";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotTorsion: return "NotTorsion";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::NotInFiltration: return "NotInFiltration";
    case Errc::NotInF2: return "NotInF2";
    case Errc::ExtractionMismatch: return "ExtractionMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::OddDegree: return "OddDegree";
    case Errc::BadTraceForm: return "BadTraceForm";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownField: return "UnknownField";
    case Errc::FactorLimit: return "FactorLimit";
    case Errc::SearchLimit: return "SearchLimit";
    case Errc::Undecidable: return "Undecidable";
    case Errc::Internal: return "Internal";
  }
  return "Error";
}

Config& config() {
  static Config c;
  return c;
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

mpz_class pow_mod(const mpz_class& base, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(Errc::DivisionByZero, "no inverse mod " + m.get_str());
  return r;
}

namespace {

mpz_class rho_f(const mpz_class& x, const mpz_class& c, const mpz_class& n) {
  return (x * x + c) % n;
}

// Brent's cycle variant; n odd composite, not a prime power of a found factor.
mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (long c0 = 1; c0 < 40; ++c0) {
    mpz_class c(c0), x(2), y(2), d(1);
    long limit = 1 << 20;
    while (d == 1 && limit-- > 0) {
      x = rho_f(x, c, n);
      y = rho_f(rho_f(y, c, n), c, n);
      mpz_class diff = x - y;
      if (diff == 0) break;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      d = g;
    }
    if (d != 1 && d != n) return d;
  }
  fail(Errc::FactorLimit, "cannot factor " + n.get_str());
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n]++;
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    factor_into(r, out);
    factor_into(r, out);
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

namespace {
std::mutex known_primes_mu;
std::set<mpz_class>& known_primes() {
  static std::set<mpz_class> s;
  return s;
}
}  // namespace

void register_known_prime(const mpz_class& p) {
  std::lock_guard<std::mutex> lock(known_primes_mu);
  if (p > 1000) known_primes().insert(p);
}

std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  if (n == 0) fail(Errc::ZeroArgument, "factor(0)");
  thread_local std::map<mpz_class, std::vector<std::pair<mpz_class, int>>> memo;
  auto hit = memo.find(n);
  if (hit != memo.end()) return hit->second;
  const mpz_class key = n;
  std::map<mpz_class, int> acc;
  for (mpz_class p = 2; p * p <= n && p <= 1000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      acc[p]++;
      n /= p;
    }
  }
  if (n > 1 && !is_probable_prime(n)) {
    std::lock_guard<std::mutex> lock(known_primes_mu);
    for (const auto& p : known_primes()) {
      while (n % p == 0) {
        acc[p]++;
        n /= p;
      }
      if (n == 1 || is_probable_prime(n)) break;
    }
  }
  if (n > 1) {
    long bound = config().trial_division_bound;
    for (mpz_class p = 1001; p * p <= n && p <= bound; p += 2) {
      while (n % p == 0) {
        acc[p]++;
        n /= p;
      }
    }
  }
  if (n > 1) factor_into(n, acc);
  std::vector<std::pair<mpz_class, int>> out(acc.begin(), acc.end());
  if (memo.size() > 200000) memo.clear();
  memo.emplace(key, out);
  return out;
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) fail(Errc::ZeroArgument, "squarefree_part(0)");
  mpz_class out = (n < 0) ? -1 : 1;
  for (const auto& [p, e] : factor(n))
    if (e % 2) out *= p;
  return out;
}

int legendre_int(const mpz_class& a, const mpz_class& p) {
  if (p == 2 || !is_probable_prime(p)) fail(Errc::NotPrime, p.get_str() + " is not an odd prime");
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

mpz_class sqrt_mod(const mpz_class& a_in, const mpz_class& p) {
  mpz_class a = ((a_in % p) + p) % p;
  if (a == 0) return 0;
  if (legendre_int(a, p) != 1) fail(Errc::NotSquare, a.get_str() + " is not a square mod " + p.get_str());
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (legendre_int(z, p) != -1) ++z;
  mpz_class m(s), c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    mpz_class tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    mpz_class b = c;
    for (mpz_class j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

}  // namespace gwlab
