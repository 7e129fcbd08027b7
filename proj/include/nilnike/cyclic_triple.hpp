#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "nilnike/rng.hpp"

namespace nilnike {

// Element of the class-2 group on C x C x C with C = Z/(p^alpha) and
//   (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
// where the pairing is residue multiplication mod p^alpha. The pairing is
// bilinear and non-degenerate; the commutator map it induces,
// (x,y),(x',y') -> xy' - x'y, is alternating, which is what the key
// derivation consumes.
struct CyclicTripleElement {
    mpz_class x;
    mpz_class y;
    mpz_class z;
};

class CyclicTripleGroup {
public:
    using Element = CyclicTripleElement;

    static constexpr std::uint8_t kTag = 0x02;

    // p an odd prime, alpha >= 1.
    CyclicTripleGroup(mpz_class p, unsigned alpha);

    const mpz_class& p() const { return p_; }
    unsigned alpha() const { return alpha_; }
    const mpz_class& modulus() const { return q_; }  // p^alpha

    Element identity() const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    bool equal(const Element& a, const Element& b) const;
    std::vector<std::uint8_t> serialize(const Element& a) const;
    Element deserialize(std::span<const std::uint8_t> bytes) const;

    // (e*x, e*y, e*z + binom2(e)*x*y).
    Element pow_closed_form(const Element& a, const mpz_class& e) const;

    // (0, 0, x y' - x' y).
    Element commutator_closed_form(const Element& a, const Element& b) const;

    Element random_element(Rng& rng) const;
    Element make(mpz_class x, mpz_class y, mpz_class z) const;

    // --- protocol hooks ---
    mpz_class key_modulus() const { return q_; }
    const mpz_class& prime() const { return p_; }
    bool supports_class(unsigned n) const { return n == 2; }
    Element sample_generator(Rng& rng) const { return random_element(rng); }
    // The commutator scalar must be a unit so the key base has order p^alpha.
    bool key_base_ok(const Element& c) const;

private:
    mpz_class reduce(const mpz_class& v) const;

    mpz_class p_;
    unsigned alpha_;
    mpz_class q_;
};

} // namespace nilnike
