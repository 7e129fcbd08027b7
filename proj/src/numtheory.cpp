#include "nilnike/numtheory.hpp"

namespace nilnike {

Residue make_residue(mpz_class value, mpz_class modulus) {
    if (modulus < 2) fail("BadConfig", "modulus must be at least 2");
    mpz_class v;
    mpz_mod(v.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
    return Residue{std::move(v), std::move(modulus)};
}

bool operator==(const Residue& a, const Residue& b) {
    return a.modulus == b.modulus && a.value == b.value;
}

Residue mod_pow(const Residue& base, const mpz_class& exp) {
    if (base.modulus < 2) fail("BadConfig", "mod_pow needs modulus >= 2");
    if (exp < 0) fail("BadConfig", "mod_pow takes a nonnegative exponent");
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.value.get_mpz_t(), exp.get_mpz_t(), base.modulus.get_mpz_t());
    return Residue{r, base.modulus};
}

Residue mod_inv(const Residue& x) {
    mpz_class r;
    int ok = mpz_invert(r.get_mpz_t(), x.value.get_mpz_t(), x.modulus.get_mpz_t());
    if (!ok) fail("NonUnit", "no inverse: gcd(value, modulus) > 1");
    return Residue{r, x.modulus};
}

Valuation v_p(const mpz_class& x, const mpz_class& p) {
    if (p < 2) fail("BadConfig", "v_p needs p >= 2");
    if (x == 0) return Valuation{false, 0};
    mpz_class r = x < 0 ? mpz_class(-x) : x;
    unsigned long e = 0;
    mpz_class q, rem;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        if (rem != 0) break;
        r = q;
        ++e;
    }
    return Valuation{true, e};
}

bool is_quadratic_residue(const mpz_class& s, const mpz_class& p) {
    mpz_class e = (p - 1) / 2;
    mpz_class r;
    mpz_powm(r.get_mpz_t(), s.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1;
}

mpz_class find_qnr(const mpz_class& p) {
    if (p < 3 || p % 2 == 0 || !is_probable_prime(p))
        fail("BadConfig", "find_qnr needs an odd prime");
    for (mpz_class t = 2; t < p; ++t) {
        mpz_class e = (p - 1) / 2;
        mpz_class r;
        mpz_powm(r.get_mpz_t(), t.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (r == p - 1) return t;
    }
    fail("BadConfig", "no nonresidue found (p is not an odd prime)");
}

mpz_class hensel_sqrt(const mpz_class& s, const mpz_class& branch, const mpz_class& p,
                      unsigned precision) {
    if (precision == 0) fail("BadConfig", "hensel_sqrt needs precision >= 1");
    if (p < 3 || p % 2 == 0) fail("BadConfig", "hensel_sqrt needs an odd prime");
    mpz_class s_mod_p = s % p;
    if (s_mod_p < 0) s_mod_p += p;
    if (s_mod_p == 0 || !is_quadratic_residue(s_mod_p, p)) {
        // s = 0 mod p cannot match a unit branch either; report the stronger
        // diagnosis only for genuine nonresidues.
        if (s_mod_p != 0) fail("NotASquare", "s is a quadratic nonresidue modulo p");
    }
    mpz_class b = branch % p;
    if (b < 0) b += p;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t());
    if (g != 1) fail("BadBranch", "branch must be a unit modulo p");
    if ((b * b - s) % p != 0) fail("BadBranch", "branch^2 != s modulo p");

    // Newton iteration x <- (x + s/x)/2 doubles the working precision each
    // round; the branch pins which of the two roots is lifted.
    mpz_class x = b;
    unsigned have = 1;
    while (have < precision) {
        have = std::min(2 * have, precision);
        mpz_class mod = pow_ui(p, have);
        mpz_class inv2x;
        mpz_class two_x = 2 * x % mod;
        mpz_invert(inv2x.get_mpz_t(), two_x.get_mpz_t(), mod.get_mpz_t());
        x = (x - (x * x - s) % mod * inv2x) % mod;
        if (x < 0) x += mod;
    }
    return x;
}

mpz_class binom2(const mpz_class& a) {
    return a * (a - 1) / 2;
}

mpz_class pow_ui(const mpz_class& p, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

bool is_probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

mpz_class ceil_sqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) ++r;
    return r;
}

} // namespace nilnike
