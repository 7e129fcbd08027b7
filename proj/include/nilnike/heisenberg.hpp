#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "nilnike/rng.hpp"

namespace nilnike {

// Element of the extraspecial group on F_p^m x F_p^m x F_p with
//   (u,v,z)(u',v',z') = (u+u', v+v', z+z'+u.v').
struct HeisElement {
    std::vector<mpz_class> u;
    std::vector<mpz_class> v;
    mpz_class z;
};

class HeisenbergGroup {
public:
    using Element = HeisElement;

    static constexpr std::uint8_t kTag = 0x01;

    // p an odd prime, m >= 1.
    HeisenbergGroup(mpz_class p, unsigned m);

    const mpz_class& p() const { return p_; }
    unsigned dim() const { return m_; }

    Element identity() const;
    Element mul(const Element& x, const Element& y) const;
    Element inv(const Element& x) const;
    bool equal(const Element& x, const Element& y) const;
    std::vector<std::uint8_t> serialize(const Element& x) const;
    Element deserialize(std::span<const std::uint8_t> bytes) const;

    // (a*u, a*v, a*z + binom2(a)*(u.v)); agrees with iterated multiplication.
    Element pow_closed_form(const Element& x, const mpz_class& a) const;

    // (0, 0, u.v' - u'.v).
    Element commutator_closed_form(const Element& x, const Element& y) const;

    bool is_central(const Element& x) const;

    Element random_element(Rng& rng) const;

    // Builds an element, reducing every coordinate mod p.
    Element make(std::vector<mpz_class> u, std::vector<mpz_class> v, mpz_class z) const;

    // The 2m elements with a single unit coordinate in u or v.
    std::vector<Element> standard_generators() const;

    // --- protocol hooks ---
    mpz_class key_modulus() const { return p_; }   // |[g1,g2]| divides p
    unsigned alpha() const { return 1; }
    const mpz_class& prime() const { return p_; }
    bool supports_class(unsigned n) const { return n == 2; }
    Element sample_generator(Rng& rng) const { return random_element(rng); }
    // Nondegenerate instance: the derived key generates the full center.
    bool key_base_ok(const Element& c) const;

private:
    mpz_class reduce(const mpz_class& x) const;
    mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const;

    mpz_class p_;
    unsigned m_;
};

} // namespace nilnike
