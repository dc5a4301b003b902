#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gwlab {

// Place of Q: the real place or a finite prime (2 included).
struct Place {
  bool is_real = false;
  mpz_class p = 0;

  static Place real() { return {true, 0}; }
  static Place finite(mpz_class prime) { return {false, std::move(prime)}; }
  bool operator==(const Place& o) const { return is_real == o.is_real && p == o.p; }
  bool operator<(const Place& o) const {
    if (is_real != o.is_real) return is_real;  // real place sorts first
    return p < o.p;
  }
  std::string str() const { return is_real ? "inf" : p.get_str(); }
};

// Legendre symbol (a|p) for odd prime p; 0 when p | a.
int legendre(const mpz_class& a, const mpz_class& p);

// The unique squarefree integer representing a nonzero rational mod squares.
mpz_class square_class_Q(const mpq_class& a);

// Hilbert symbol (a,b)_v over Q.
int hilbert(const mpq_class& a, const mpq_class& b, const Place& v);

// Places where a Hilbert or Hasse symbol of the given rationals can be
// nontrivial: {inf, 2} plus odd primes of numerators/denominators.
std::vector<Place> relevant_places(const std::vector<mpq_class>& entries);

long val_p(const mpq_class& a, const mpz_class& p);

}  // namespace gwlab
