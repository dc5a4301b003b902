#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace gwlab {

bool is_probable_prime(const mpz_class& n);

// Prime factorisation of |n|, ascending primes. Trial division up to the
// configured bound, then Brent-Pollard rho; throws FactorLimit if a cofactor
// resists.
std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n);

// Sign-preserving squarefree part: n = squarefree_part(n) * square.
mpz_class squarefree_part(const mpz_class& n);

// Legendre symbol (a|p) in {-1,0,1}, p an odd prime.
int legendre_int(const mpz_class& a, const mpz_class& p);

mpz_class pow_mod(const mpz_class& base, const mpz_class& e, const mpz_class& m);

// Square root of a quadratic residue mod an odd prime (Tonelli-Shanks).
mpz_class sqrt_mod(const mpz_class& a, const mpz_class& p);

mpz_class inv_mod(const mpz_class& a, const mpz_class& m);

// Primes introduced by internal witness construction are remembered so that
// later factorisations of their products stay cheap.
void register_known_prime(const mpz_class& p);

}  // namespace gwlab
