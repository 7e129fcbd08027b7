#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "nilnike/errors.hpp"
#include "nilnike/numtheory.hpp"

namespace nilnike {

// Contract every platform group implements. Elements are immutable values;
// equality agrees with byte equality of the canonical serialization.
template <class G>
concept PlatformGroup = requires(const G& g, const typename G::Element& x,
                                 const typename G::Element& y) {
    typename G::Element;
    { g.mul(x, y) } -> std::same_as<typename G::Element>;
    { g.inv(x) } -> std::same_as<typename G::Element>;
    { g.identity() } -> std::same_as<typename G::Element>;
    { g.equal(x, y) } -> std::same_as<bool>;
    { g.serialize(x) } -> std::same_as<std::vector<std::uint8_t>>;
};

struct OpCounter {
    std::uint64_t mults = 0;
};

// Wraps a platform group and bills every multiplication to a counter.
// Inversions are billed as one multiplication.
template <PlatformGroup G>
class Counted {
public:
    using Element = typename G::Element;

    Counted(const G& g, OpCounter& counter) : g_(&g), counter_(&counter) {}

    Element mul(const Element& x, const Element& y) const {
        ++counter_->mults;
        return g_->mul(x, y);
    }
    Element inv(const Element& x) const {
        ++counter_->mults;
        return g_->inv(x);
    }
    Element identity() const { return g_->identity(); }
    bool equal(const Element& x, const Element& y) const { return g_->equal(x, y); }
    std::vector<std::uint8_t> serialize(const Element& x) const { return g_->serialize(x); }

    const G& inner() const { return *g_; }

private:
    const G* g_;
    OpCounter* counter_;
};

// x^e by square-and-multiply; negative e goes through the inverse.
// Costs (bitlen(e) - 1) squarings + (popcount(e) - 1) multiplications.
template <PlatformGroup G>
typename G::Element pow(const G& g, const typename G::Element& x, const mpz_class& e) {
    if (e < 0) return pow(g, g.inv(x), mpz_class(-e));
    if (e == 0) return g.identity();
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    typename G::Element r = x;
    for (std::size_t i = bits - 1; i-- > 0;) {
        r = g.mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = g.mul(r, x);
    }
    return r;
}

// [x, y] = x y x^-1 y^-1.
template <PlatformGroup G>
typename G::Element commutator(const G& g, const typename G::Element& x,
                               const typename G::Element& y) {
    return g.mul(g.mul(g.mul(x, y), g.inv(x)), g.inv(y));
}

// Right-nested commutator [x1,[x2,[...,[x_{n-1},x_n]]...]], n >= 2.
template <PlatformGroup G>
typename G::Element nested_commutator(const G& g, std::span<const typename G::Element> xs) {
    if (xs.size() < 2) fail("TooShort", "nested commutator needs at least two elements");
    typename G::Element acc = xs[xs.size() - 1];
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
        acc = commutator(g, xs[i], acc);
    }
    return acc;
}

// Smallest a <= cap with x^(p^a) = 1 in a finite p-group quotient.
template <PlatformGroup G>
unsigned order_p_power(const G& g, const typename G::Element& x, const mpz_class& p,
                       unsigned cap) {
    typename G::Element y = x;
    const typename G::Element id = g.identity();
    for (unsigned a = 0; a <= cap; ++a) {
        if (g.equal(y, id)) return a;
        y = pow(g, y, p);
    }
    fail("CapExceeded", "no p-power order below the cap");
}

// Exhaustive slot-kernel index: enumerates <gens[slot]> and counts the
// powers whose substitution into the nested commutator is trivial. The set
// of such powers is the kernel of a homomorphism from <gens[slot]>, so the
// count divides the order and the quotient is the index.
template <PlatformGroup G>
std::uint64_t brute_force_slot_kernel(const G& g,
                                      std::span<const typename G::Element> gens,
                                      std::size_t slot,
                                      std::uint64_t enumeration_bound = 100000) {
    if (slot >= gens.size()) fail("BadConfig", "slot out of range");
    const typename G::Element id = g.identity();
    std::vector<typename G::Element> work(gens.begin(), gens.end());

    std::uint64_t order = 0;
    std::uint64_t kernel = 0;
    typename G::Element h = id;
    for (std::uint64_t m = 0;; ++m) {
        if (m > 0 && g.equal(h, id)) {
            order = m;
            break;
        }
        if (m >= enumeration_bound)
            fail("TooLarge", "cyclic subgroup exceeds the enumeration bound");
        work[slot] = h;
        if (g.equal(nested_commutator<G>(g, work), id)) ++kernel;
        h = g.mul(h, gens[slot]);
    }
    if (kernel == 0 || order % kernel != 0)
        fail("BadConfig", "kernel count does not divide the subgroup order");
    return order / kernel;
}

} // namespace nilnike
