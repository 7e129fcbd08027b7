#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "nilnike/numtheory.hpp"
#include "nilnike/rng.hpp"

namespace nilnike {

struct Quaternion {
    mpz_class a, b, c, d;
};

// Rank-4 algebra over Z/(p^N) on the basis 1, i, j, k with
//   i^2 = t,  j^2 = p,  k = ij = -ji,
// t a quadratic nonresidue mod p. Elements with p | a and p | b form the
// unique maximal ideal m; the filtration satisfies m^(2s) = p^s * (whole
// algebra) and m^(2s+1) = p^s * m.
class QuatAlgebra {
public:
    QuatAlgebra(mpz_class p, mpz_class t, unsigned precision);

    const mpz_class& p() const { return p_; }
    const mpz_class& t() const { return t_; }
    unsigned precision() const { return n_; }
    const mpz_class& modulus() const { return q_; }  // p^N

    Quaternion zero() const { return Quaternion{0, 0, 0, 0}; }
    Quaternion one() const { return Quaternion{1, 0, 0, 0}; }

    Quaternion make(mpz_class a, mpz_class b, mpz_class c, mpz_class d) const;
    Quaternion mul(const Quaternion& x, const Quaternion& y) const;
    Quaternion sub(const Quaternion& x, const Quaternion& y) const;
    Quaternion conj(const Quaternion& x) const;  // bar map: negates b, c, d
    mpz_class norm(const Quaternion& x) const;   // a^2 - t b^2 - p c^2 + t p d^2

    bool equal(const Quaternion& x, const Quaternion& y) const;

    // m-adic valuation min(2 v_p(a), 2 v_p(b), 2 v_p(c)+1, 2 v_p(d)+1).
    // Infinite for the zero quaternion; finite results saturate at 2N-1,
    // beyond which the truncated coordinates carry no information.
    Valuation m_valuation(const Quaternion& x) const;

    // Canonical representative modulo m^layer: a, b mod p^ceil(layer/2),
    // c, d mod p^floor(layer/2). Requires layer <= 2N.
    Quaternion reduce_mod_layer(const Quaternion& x, unsigned layer) const;

    // x - y in m^layer, i.e. x y^{-1} in 1 + m^layer for unit y.
    bool congruent_mod_layer(const Quaternion& x, const Quaternion& y, unsigned layer) const;

    // Validates i^2 = t, j^2 = p, k = ij = -ji and the induced k relations
    // against the multiplication actually performed by the sign table.
    bool check_defining_relations() const;

    // Test fixture: flips one structure-constant sign so that relation
    // checks must detect the corruption.
    void corrupt_sign_table_for_test() { signs_[8] = -signs_[8]; }

private:
    mpz_class reduce(const mpz_class& x) const;

    mpz_class p_, t_;
    unsigned n_;
    mpz_class q_;
    // Signs of the nine cross terms in the product formula, derived from the
    // defining relations and checked at construction.
    std::array<int, 9> signs_;
};

// Norm-one element of the truncated quaternion algebra together with a
// certified lower bound on the m-valuation of q - 1.
struct SL1Element {
    Quaternion q;
    unsigned level = 0;
};

struct QuatParams {
    mpz_class p;
    mpz_class t;
    unsigned precision = 0;  // N
    unsigned alpha = 1;
    unsigned n = 1;          // class / (users - 1)
    unsigned i0 = 1;         // base layer 2*alpha - 1
};

// Smallest working precision that keeps layer (n+1)(2 alpha - 1)
// representable, plus two guard digits.
unsigned precision_for(unsigned n, unsigned alpha);

// Group of norm-one quaternions congruent to 1 mod m, in the finite quotient
// modulo the layer (n+1) * i0 where the protocol compares keys. Group
// elements are kept in canonical layer-reduced form, so equality is
// coordinate equality and serialization is canonical bytes.
class QuaternionGroup {
public:
    using Element = Quaternion;

    static constexpr std::uint8_t kTag = 0x03;

    // t defaults to the smallest nonresidue, N to precision_for(n, alpha).
    QuaternionGroup(mpz_class p, unsigned alpha, unsigned n,
                    std::optional<mpz_class> t = std::nullopt,
                    std::optional<unsigned> precision = std::nullopt);

    const QuatParams& params() const { return params_; }
    const QuatAlgebra& algebra() const { return alg_; }
    QuatAlgebra& algebra_for_test() { return alg_; }
    unsigned key_layer() const { return key_layer_; }  // (n+1) * i0

    // --- group contract (layer-canonical elements) ---
    Element identity() const { return alg_.one(); }
    Element mul(const Element& x, const Element& y) const {
        return alg_.reduce_mod_layer(alg_.mul(x, y), key_layer_);
    }
    Element inv(const Element& x) const {
        return alg_.reduce_mod_layer(alg_.conj(x), key_layer_);
    }
    bool equal(const Element& x, const Element& y) const { return alg_.equal(x, y); }
    std::vector<std::uint8_t> serialize(const Element& x) const;
    Element deserialize(std::span<const std::uint8_t> bytes) const;

    Element from_sl1(const SL1Element& x) const {
        return alg_.reduce_mod_layer(x.q, key_layer_);
    }

    // --- exact full-precision operations on norm-one elements ---

    // Constructs the norm-one element with the given b, c, d and
    // a = sqrt(1 + t b^2 + p c^2 - t p d^2) on the branch a = 1 mod p.
    // Requires p | b so the result lies in 1 + m.
    SL1Element sl1_from_bcd(const mpz_class& b, const mpz_class& c, const mpz_class& d) const;

    // Uniform element with m_valuation(q - 1) exactly `level`; resamples up
    // to 64 times and throws SamplingFailed on degenerate parameters.
    // Requires 1 <= level <= 2N - 3.
    SL1Element sample_s_element(unsigned level, Rng& rng) const;

    SL1Element sl1_mul(const SL1Element& x, const SL1Element& y) const;
    SL1Element sl1_inv(const SL1Element& x) const;  // conj; throws NotNormOne
    SL1Element sl1_pow(const SL1Element& x, const mpz_class& e) const;
    SL1Element sl1_commutator(const SL1Element& x, const SL1Element& y) const;

    // Exact m-valuation of q - 1, clamped to the saturation bound.
    unsigned exact_level(const Quaternion& q) const;

    // x^m = a^m + m b i + m c j + m d k modulo m^((k+1) i0), valid for
    // elements of valuation >= k * i0; the result is layer-canonical.
    // Throws LevelTooLow when the valuation precondition fails.
    Quaternion pow_layer_formula(const SL1Element& x, const mpz_class& m, unsigned k) const;

    bool equal_mod_layer(const Quaternion& x, const Quaternion& y, unsigned layer) const {
        return alg_.congruent_mod_layer(x, y, layer);
    }

    // --- protocol hooks ---
    mpz_class key_modulus() const { return pow_ui(params_.p, params_.alpha); }
    unsigned alpha() const { return params_.alpha; }
    const mpz_class& prime() const { return params_.p; }
    bool supports_class(unsigned n) const { return n == params_.n && n >= 1; }
    Element sample_generator(Rng& rng) const { return from_sl1(sample_s_element(params_.i0, rng)); }
    // The key base must sit at layer n * i0 exactly so that its order in the
    // key quotient is exactly p^alpha and the coordinate attack sees alpha
    // digits.
    bool key_base_ok(const Element& c) const;

private:
    QuatParams params_;
    QuatAlgebra alg_;
    unsigned key_layer_;
};

} // namespace nilnike
