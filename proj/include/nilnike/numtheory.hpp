#pragma once

#include <gmpxx.h>

#include "nilnike/errors.hpp"

namespace nilnike {

// Residue class modulo an arbitrary modulus >= 2. The protocol layers only
// ever use prime-power moduli p^N; nothing here depends on that.
struct Residue {
    mpz_class value;
    mpz_class modulus;
};

Residue make_residue(mpz_class value, mpz_class modulus);

bool operator==(const Residue& a, const Residue& b);

// p-adic valuation. finite == false encodes v_p(0) = infinity.
struct Valuation {
    bool finite = true;
    unsigned long order = 0;

    bool at_least(unsigned long k) const { return !finite || order >= k; }
};

inline bool operator==(const Valuation& a, const Valuation& b) {
    if (a.finite != b.finite) return false;
    return !a.finite || a.order == b.order;
}

// base^exp by square-and-multiply, exp >= 0.
Residue mod_pow(const Residue& base, const mpz_class& exp);

// Multiplicative inverse; throws NonUnit when gcd(value, modulus) > 1.
Residue mod_inv(const Residue& x);

// Largest e with p^e | x; infinite for x = 0.
Valuation v_p(const mpz_class& x, const mpz_class& p);

// Smallest positive quadratic nonresidue modulo an odd prime p
// (Euler criterion: t^((p-1)/2) = -1 mod p).
mpz_class find_qnr(const mpz_class& p);

// Euler-criterion residue test for s mod p, p odd prime, gcd(s, p) = 1.
bool is_quadratic_residue(const mpz_class& s, const mpz_class& p);

// Square root of s modulo p^N by Newton lifting, selecting the root that is
// congruent to `branch` modulo p. Requires p odd, gcd(branch, p) = 1.
// Throws NotASquare when s is a nonresidue mod p, BadBranch when
// branch^2 != s mod p.
mpz_class hensel_sqrt(const mpz_class& s, const mpz_class& branch, const mpz_class& p,
                      unsigned precision);

// a(a-1)/2.
mpz_class binom2(const mpz_class& a);

// p^e as an mpz.
mpz_class pow_ui(const mpz_class& p, unsigned long e);

// Miller-Rabin with 30 rounds; used for configuration validation only.
bool is_probable_prime(const mpz_class& n);

// ceil(sqrt(n)) for n >= 0.
mpz_class ceil_sqrt(const mpz_class& n);

} // namespace nilnike
