#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "nilnike/cyclic_triple.hpp"
#include "nilnike/encoding.hpp"
#include "nilnike/group_ops.hpp"
#include "nilnike/heisenberg.hpp"
#include "nilnike/protocol.hpp"
#include "nilnike/quaternion.hpp"

namespace nilnike {

// Result of one key-recovery attempt. `ops` is the algorithm's headline
// group-operation count: for the generic attack that is the discrete-log
// search (the quantity the platform comparison is about), for the linear
// attacks everything they do. `total_ops` always includes share assembly
// and the final exponentiation.
template <PlatformGroup G>
struct AttackOutcome {
    std::string algorithm;
    bool success = false;
    bool refused = false;
    std::string error;
    std::uint64_t ops = 0;
    std::uint64_t total_ops = 0;
    double millis = 0.0;
    std::vector<mpz_class> exponents;
    std::optional<typename G::Element> key;
};

struct DlogBudget {
    std::uint64_t max_ops = std::uint64_t{1} << 26;
    std::uint64_t max_table_entries = std::uint64_t{1} << 26;
};

// Baby-step giant-step: e with base^e = target, 0 <= e < order_bound.
// Costs at most 2*ceil(sqrt(order_bound)) + 2*bitlen(order_bound) + O(1)
// multiplications; the baby table is keyed by canonical serialization.
template <PlatformGroup G>
mpz_class bsgs(const G& g, const typename G::Element& base, const typename G::Element& target,
               const mpz_class& order_bound,
               std::uint64_t max_table_entries = std::uint64_t{1} << 26) {
    if (order_bound < 1) fail("BadConfig", "order bound must be positive");
    const mpz_class m = ceil_sqrt(order_bound);
    if (m > max_table_entries)
        fail("BudgetExceeded", "baby-step table would exceed the memory budget");
    const std::uint64_t mm = m.get_ui() == 0 ? 1 : m.get_ui();

    std::unordered_map<std::string, std::uint64_t> baby;
    baby.reserve(mm);
    {
        typename G::Element x = g.identity();
        for (std::uint64_t j = 0; j < mm; ++j) {
            auto bytes = g.serialize(x);
            baby.emplace(std::string(bytes.begin(), bytes.end()), j);
            if (j + 1 < mm) x = g.mul(x, base);
        }
    }

    const typename G::Element giant = pow(g, g.inv(base), m);
    typename G::Element t = target;
    const mpz_class k_max = order_bound / m + 1;
    for (mpz_class k = 0; k <= k_max; ++k) {
        auto bytes = g.serialize(t);
        auto it = baby.find(std::string(bytes.begin(), bytes.end()));
        if (it != baby.end()) {
            mpz_class e = k * m + it->second;
            if (e < order_bound) return e;
        }
        t = g.mul(t, giant);
    }
    fail("NotInSubgroup", "target is not a power of the base within the order bound");
}

struct PhStats {
    unsigned bsgs_calls = 0;
};

// Pohlig-Hellman in a cyclic group of order p^alpha: peels one base-p digit
// per round, each digit via bsgs in the order-p subgroup.
template <PlatformGroup G>
mpz_class pohlig_hellman(const G& g, const typename G::Element& base,
                         const typename G::Element& target, const mpz_class& p, unsigned alpha,
                         std::uint64_t max_table_entries = std::uint64_t{1} << 26,
                         PhStats* stats = nullptr) {
    if (alpha < 1) fail("BadConfig", "alpha must be >= 1");
    const typename G::Element gamma = pow(g, base, pow_ui(p, alpha - 1));
    const typename G::Element base_inv = g.inv(base);
    mpz_class e = 0;
    typename G::Element u = target;
    for (unsigned k = 0; k < alpha; ++k) {
        const typename G::Element tk = pow(g, u, pow_ui(p, alpha - 1 - k));
        const mpz_class digit = bsgs(g, gamma, tk, p, max_table_entries);
        if (stats) ++stats->bsgs_calls;
        if (digit != 0) {
            const mpz_class shift = digit * pow_ui(p, k);
            e += shift;
            if (k + 1 < alpha) u = g.mul(u, pow(g, base_inv, shift));
        }
    }
    return e;
}

// The three public quantities an eavesdropper derives from a transcript:
//   c      = [g_1, ..., g_n]
//   c_prod = [g_1^{a_1}, ..., g_n^{a_n}]      = c^{a_1 ... a_n}
//   c_last = [g_1^{a_{n+1}}, g_2, ..., g_n]   = c^{a_{n+1}}
template <PlatformGroup G>
struct EavesdropperView {
    typename G::Element c;
    typename G::Element c_prod;
    typename G::Element c_last;
};

template <class CG, ProtocolPlatform G>
EavesdropperView<G> assemble_view(const CG& cg, const Transcript<G>& t) {
    const unsigned n = t.params.n;
    EavesdropperView<G> view{t.params.key_base, t.params.key_base, t.params.key_base};
    if (n == 1) {
        view.c = t.params.generators[0];
        view.c_prod = share_at(t, 1, 1);
        view.c_last = share_at(t, 1, 2);
        return view;
    }
    std::vector<typename G::Element> gens = t.params.generators;
    view.c = nested_commutator<CG>(cg, {gens.data(), gens.size()});

    std::vector<typename G::Element> diag;
    diag.reserve(n);
    for (unsigned i = 1; i <= n; ++i) diag.push_back(share_at(t, i, i));
    view.c_prod = nested_commutator<CG>(cg, {diag.data(), diag.size()});

    std::vector<typename G::Element> last = gens;
    last[0] = share_at(t, 1, n + 1);
    view.c_last = nested_commutator<CG>(cg, {last.data(), last.size()});
    return view;
}

// Solve the view with Pohlig-Hellman: recover a_{n+1} from (c, c_last) and
// output c_prod^{a_{n+1}} = c^{a_1 ... a_{n+1}}.
template <class CG, PlatformGroup G>
typename G::Element solve_view(const CG& cg, const EavesdropperView<G>& view, const mpz_class& p,
                               unsigned alpha, std::uint64_t max_table_entries,
                               mpz_class* recovered = nullptr, PhStats* stats = nullptr) {
    const mpz_class a_last = pohlig_hellman(cg, view.c, view.c_last, p, alpha,
                                            max_table_entries, stats);
    if (recovered) *recovered = a_last;
    return pow(cg, view.c_prod, a_last);
}

namespace detail {
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double millis() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};
} // namespace detail

// Generic passive attack: assemble the view, recover a_{n+1} by
// Pohlig-Hellman, reconstruct the key. Refuses up front when the estimated
// search cost 2*alpha*(ceil(sqrt(p))+2) exceeds the budget.
template <ProtocolPlatform G>
AttackOutcome<G> eavesdrop_generic(const G& g, const Transcript<G>& t,
                                   const DlogBudget& budget = {}) {
    AttackOutcome<G> out;
    out.algorithm = "generic";
    detail::Stopwatch clock;
    const mpz_class estimate = 2 * t.params.alpha * (ceil_sqrt(g.prime()) + 2);
    if (estimate > budget.max_ops) {
        out.refused = true;
        out.error = "BudgetExceeded";
        out.millis = clock.millis();
        return out;
    }
    try {
        OpCounter assembly, search;
        Counted<G> ag(g, assembly);
        const EavesdropperView<G> view = assemble_view(ag, t);
        Counted<G> sg(g, search);
        mpz_class a_last;
        typename G::Element key =
            solve_view(sg, view, g.prime(), t.params.alpha, budget.max_table_entries, &a_last);
        // key reconstruction is assembly-side work
        out.ops = search.mults;
        out.total_ops = search.mults + assembly.mults;
        out.exponents = {a_last};
        out.key = std::move(key);
        out.success = true;
    } catch (const Error& e) {
        out.error = e.code();
        if (out.error == "BudgetExceeded") out.refused = true;
    }
    out.millis = clock.millis();
    return out;
}

// Coordinate-division attack on the extraspecial platform: the share
// g_i^{a} has u,v parts a*u, a*v, so one modular division at any unit
// coordinate of a generator reveals a mod p. No search is involved.
AttackOutcome<HeisenbergGroup> attack_heisenberg_linear(const HeisenbergGroup& g,
                                                        const Transcript<HeisenbergGroup>& t);

// Layer-coordinate attack on the quaternion platform: modulo the key layer,
// c^a = a0^a + a*b0 i + a*c0 j + a*d0 k, so the coefficient of any
// minimal-valuation coordinate of c - 1 reveals a mod p^alpha after one
// modular division.
AttackOutcome<QuaternionGroup> attack_quaternion_linear(const QuaternionGroup& g,
                                                        const Transcript<QuaternionGroup>& t);

// Diffie-Hellman harness: the planted transcript with exponents
// (x, 1, ..., 1, y) reduces, as public data, to the eavesdropper view
// (c, c^x, c^y); feeding that view to an eavesdropper routine yields c^{xy}.
template <PlatformGroup G, class Solver>
typename G::Element cdh_from_eavesdropper(const G& g, const typename G::Element& c,
                                          const typename G::Element& c_x,
                                          const typename G::Element& c_y, const mpz_class& p,
                                          unsigned alpha, Solver&& solver) {
    EavesdropperView<G> view{c, c_x, c_y};
    return solver(g, view, p, alpha);
}

template <PlatformGroup G>
typename G::Element cdh_from_eavesdropper(const G& g, const typename G::Element& c,
                                          const typename G::Element& c_x,
                                          const typename G::Element& c_y, const mpz_class& p,
                                          unsigned alpha) {
    return cdh_from_eavesdropper(
        g, c, c_x, c_y, p, alpha,
        [](const G& gg, const EavesdropperView<G>& view, const mpz_class& pp, unsigned a) {
            return solve_view(gg, view, pp, a, std::uint64_t{1} << 26);
        });
}

} // namespace nilnike
