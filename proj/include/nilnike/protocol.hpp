#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "nilnike/group_ops.hpp"
#include "nilnike/rng.hpp"

namespace nilnike {

// Requirements on a platform beyond the bare group contract: the protocol
// needs parameter access, generator sampling and a platform-specific
// nondegeneracy test for the key base.
template <class G>
concept ProtocolPlatform = PlatformGroup<G> &&
    requires(const G& g, Rng& rng, const typename G::Element& x, unsigned n) {
        { g.key_modulus() } -> std::convertible_to<mpz_class>;
        { g.alpha() } -> std::convertible_to<unsigned>;
        { g.prime() } -> std::convertible_to<mpz_class>;
        { g.supports_class(n) } -> std::same_as<bool>;
        { g.sample_generator(rng) } -> std::same_as<typename G::Element>;
        { g.key_base_ok(x) } -> std::same_as<bool>;
    };

template <ProtocolPlatform G>
struct ProtocolParams {
    unsigned n = 2;                               // class; users = n + 1
    std::vector<typename G::Element> generators;  // g_1 .. g_n
    typename G::Element key_base;                 // c = [g_1, ..., g_n]
    mpz_class key_order;                          // p^alpha = |c|
    unsigned alpha = 1;
};

struct PrivateKey {
    unsigned user = 0;  // 1-based index in 1 .. n+1
    mpz_class exponent;
};

// Public transcript: shares[i-1][j-1] = g_i^{a_j}. Entries may be absent
// (truncated transcripts); accessors raise MissingShare. Exponents and
// per-user derived keys are retained only for test-mode transcripts.
template <ProtocolPlatform G>
struct Transcript {
    ProtocolParams<G> params;
    std::vector<std::vector<std::optional<typename G::Element>>> shares;
    bool test_mode = false;
    std::vector<mpz_class> exponents;
    std::vector<typename G::Element> derived_keys;
};

template <ProtocolPlatform G>
const typename G::Element& share_at(const Transcript<G>& t, unsigned i, unsigned j) {
    if (i < 1 || i > t.params.n || j < 1 || j > t.params.n + 1)
        fail("MissingShare", "share index out of range");
    const auto& cell = t.shares[i - 1][j - 1];
    if (!cell) fail("MissingShare", "transcript lacks a required share");
    return *cell;
}

// Builds parameters around a fixed generator tuple; rejects degenerate
// tuples. For one generator (class 1, plain two-party exchange) the key base
// is the generator itself.
template <ProtocolPlatform G>
ProtocolParams<G> params_from_generators(const G& g, unsigned n,
                                         std::vector<typename G::Element> gens) {
    if (n < 1) fail("BadConfig", "protocol needs n >= 1");
    if (!g.supports_class(n)) fail("ClassUnsupported", "platform does not support this class");
    if (gens.size() != n) fail("BadConfig", "expected n generators");
    typename G::Element c =
        n == 1 ? gens[0] : nested_commutator<G>(g, {gens.data(), gens.size()});
    if (!g.key_base_ok(c))
        fail("DegenerateGenerators", "generator tuple fails the key-base test");
    return ProtocolParams<G>{n, std::move(gens), std::move(c), g.key_modulus(), g.alpha()};
}

// Samples generators until the nested commutator passes the platform's
// nondegeneracy test.
template <ProtocolPlatform G>
ProtocolParams<G> setup(const G& g, unsigned n, Rng& rng, unsigned max_retries = 64) {
    if (n < 1) fail("BadConfig", "protocol needs n >= 1");
    if (!g.supports_class(n)) fail("ClassUnsupported", "platform does not support this class");
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<typename G::Element> gens;
        gens.reserve(n);
        for (unsigned i = 0; i < n; ++i) gens.push_back(g.sample_generator(rng));
        typename G::Element c =
            n == 1 ? gens[0] : nested_commutator<G>(g, {gens.data(), gens.size()});
        if (!g.key_base_ok(c)) continue;
        return ProtocolParams<G>{n, std::move(gens), std::move(c), g.key_modulus(), g.alpha()};
    }
    fail("DegenerateGenerators", "no nondegenerate generator tuple within the retry budget");
}

// Uniform unit exponent modulo the key order.
inline PrivateKey gen_private(unsigned user, Rng& rng, const mpz_class& key_order,
                              const mpz_class& p) {
    return PrivateKey{user, rng.unit_below(key_order, p)};
}

// The n elements g_i^{a_j} user j publishes.
template <ProtocolPlatform G>
std::vector<typename G::Element> compute_shares(const G& g, const ProtocolParams<G>& params,
                                                const PrivateKey& key) {
    std::vector<typename G::Element> out;
    out.reserve(params.n);
    for (unsigned i = 0; i < params.n; ++i)
        out.push_back(pow(g, params.generators[i], key.exponent));
    return out;
}

// User j's key derivation: slot j holds g_j^{a_{n+1}} (slot 1 holds
// g_1^{a_{n+1}} for the last user reading everyone else's shares is not
// needed: user n+1 evaluates [g_1^{a_1},...,g_n^{a_n}]), every other slot i
// holds g_i^{a_i}, and the result is raised to the user's own exponent.
template <ProtocolPlatform G>
typename G::Element derive_key(const G& g, const ProtocolParams<G>& params, unsigned user,
                               const PrivateKey& own, const Transcript<G>& t) {
    const unsigned n = params.n;
    if (user < 1 || user > n + 1) fail("BadConfig", "user index out of range");
    std::vector<typename G::Element> slots;
    slots.reserve(n);
    for (unsigned i = 1; i <= n; ++i) {
        if (user <= n && i == user)
            slots.push_back(share_at(t, i, n + 1));
        else
            slots.push_back(share_at(t, i, i));
    }
    typename G::Element base =
        n == 1 ? slots[0] : nested_commutator<G>(g, {slots.data(), slots.size()});
    return pow(g, base, own.exponent);
}

// Key for a user subset B (all absent exponents read as 1): member j places
// the shares of the other members of B into the leading slots in ascending
// user order, fills the remaining slots with the plain generators, and
// raises to its own exponent. Every member of B obtains c^(prod of B's
// exponents).
template <ProtocolPlatform G>
typename G::Element degenerate_key(const G& g, const ProtocolParams<G>& params,
                                   const Transcript<G>& t, std::vector<unsigned> subset,
                                   unsigned user, const PrivateKey& own) {
    if (subset.size() < 2) fail("SubsetTooSmall", "degeneration needs at least two users");
    std::sort(subset.begin(), subset.end());
    if (!std::binary_search(subset.begin(), subset.end(), user))
        fail("BadConfig", "deriving user must belong to the subset");
    const unsigned n = params.n;
    if (subset.back() > n + 1) fail("BadConfig", "subset user out of range");
    std::vector<unsigned> others;
    for (unsigned u : subset)
        if (u != user) others.push_back(u);
    if (others.size() > n) fail("BadConfig", "subset larger than the number of users");

    std::vector<typename G::Element> slots;
    slots.reserve(n);
    for (unsigned k = 0; k < others.size(); ++k)
        slots.push_back(share_at(t, k + 1, others[k]));
    for (unsigned i = static_cast<unsigned>(others.size()) + 1; i <= n; ++i)
        slots.push_back(params.generators[i - 1]);
    typename G::Element base =
        n == 1 ? slots[0] : nested_commutator<G>(g, {slots.data(), slots.size()});
    return pow(g, base, own.exponent);
}

template <ProtocolPlatform G>
struct ExchangeResult {
    Transcript<G> transcript;
    std::vector<PrivateKey> keys;
    std::vector<typename G::Element> derived;
    bool consistent = false;
};

// Full protocol run: private keys, all n(n+1) shares, every user's derived
// key, and the byte-equality consistency verdict.
template <ProtocolPlatform G>
ExchangeResult<G> run_exchange(const G& g, const ProtocolParams<G>& params, Rng& rng,
                               bool test_mode = false) {
    const unsigned n = params.n;
    ExchangeResult<G> res;
    res.transcript.params = params;
    res.transcript.test_mode = test_mode;
    res.transcript.shares.assign(n, std::vector<std::optional<typename G::Element>>(n + 1));

    for (unsigned j = 1; j <= n + 1; ++j)
        res.keys.push_back(gen_private(j, rng, params.key_order, g.prime()));
    for (unsigned j = 1; j <= n + 1; ++j) {
        auto shares = compute_shares(g, params, res.keys[j - 1]);
        for (unsigned i = 1; i <= n; ++i) res.transcript.shares[i - 1][j - 1] = shares[i - 1];
    }
    for (unsigned j = 1; j <= n + 1; ++j)
        res.derived.push_back(derive_key(g, params, j, res.keys[j - 1], res.transcript));

    res.consistent = true;
    for (unsigned j = 1; j < n + 1; ++j)
        if (!g.equal(res.derived[j], res.derived[0])) res.consistent = false;

    if (test_mode) {
        for (const auto& k : res.keys) res.transcript.exponents.push_back(k.exponent);
        res.transcript.derived_keys = res.derived;
    }
    return res;
}

} // namespace nilnike
