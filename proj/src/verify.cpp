#include "nilnike/verify.hpp"

#include <functional>
#include <sstream>

#include "nilnike/attacks.hpp"
#include "nilnike/bench.hpp"
#include "nilnike/cyclic_triple.hpp"
#include "nilnike/group_ops.hpp"
#include "nilnike/heisenberg.hpp"
#include "nilnike/numtheory.hpp"
#include "nilnike/protocol.hpp"
#include "nilnike/quaternion.hpp"

namespace nilnike {

namespace {

struct Ctx {
    const VerifyConfig& cfg;
    Rng rng;
};

using CheckFn = std::function<std::string(Ctx&)>;  // empty string = pass

std::string check_inverse_roundtrip(Ctx& ctx) {
    const mpz_class mod = pow_ui(ctx.cfg.quat_p, 4);
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const mpz_class x = ctx.rng.unit_below(mod, ctx.cfg.quat_p);
        const Residue r = make_residue(x, mod);
        const Residue inv = mod_inv(r);
        if (!(mod_inv(inv) == r)) return "mod_inv is not an involution";
        if ((r.value * inv.value) % mod != 1) return "x * inv(x) != 1";
    }
    return {};
}

std::string check_qnr(Ctx& ctx) {
    (void)ctx;
    for (mpz_class p = 3; p < 10000; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        const mpz_class t = find_qnr(p);
        mpz_class r;
        const mpz_class e = (p - 1) / 2;
        mpz_powm(r.get_mpz_t(), t.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (r != p - 1) return "Euler criterion failed at p = " + p.get_str();
    }
    return {};
}

std::string check_valuation_additivity(Ctx& ctx) {
    const long primes[3] = {3, 5, 7};
    for (long p : primes) {
        const mpz_class pz = p;
        for (unsigned i = 0; i < ctx.cfg.trials * 8; ++i) {
            const long x = 1 + static_cast<long>(ctx.rng.next() % 1000);
            const long y = 1 + static_cast<long>(ctx.rng.next() % 1000);
            const long sx = (ctx.rng.next() & 1) ? x : -x;
            const long sy = (ctx.rng.next() & 1) ? y : -y;
            const Valuation vx = v_p(sx, pz);
            const Valuation vy = v_p(sy, pz);
            const Valuation vxy = v_p(mpz_class(sx) * sy, pz);
            if (!vxy.finite || vxy.order != vx.order + vy.order)
                return "v_p(xy) != v_p(x) + v_p(y)";
        }
    }
    return {};
}

std::string check_hensel(Ctx& ctx) {
    const unsigned N = 6;
    const mpz_class mod = pow_ui(ctx.cfg.quat_p, N);
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const mpz_class b = ctx.rng.unit_below(mod, ctx.cfg.quat_p);
        const mpz_class s = b * b % mod;
        const mpz_class branch = b % ctx.cfg.quat_p;
        const mpz_class a = hensel_sqrt(s, branch, ctx.cfg.quat_p, N);
        if (a * a % mod != s) return "hensel_sqrt(s)^2 != s";
        const mpz_class other = (mod - a) % mod;
        if (other * other % mod != s) return "negated root is not a root";
    }
    return {};
}

QuaternionGroup make_quat(const Ctx& ctx, unsigned n) {
    QuaternionGroup g(ctx.cfg.quat_p, ctx.cfg.quat_alpha, n);
    return g;
}

std::string check_quat_relations(Ctx& ctx) {
    QuaternionGroup g = make_quat(ctx, 2);
    if (ctx.cfg.corrupt_quaternion_sign_table) g.algebra_for_test().corrupt_sign_table_for_test();
    if (!g.algebra().check_defining_relations())
        return "i^2 = t, j^2 = p, k = ij = -ji do not hold under the active sign table";
    return {};
}

std::string check_quat_associativity(Ctx& ctx) {
    QuaternionGroup g = make_quat(ctx, 2);
    const QuatAlgebra& alg = g.algebra();
    const mpz_class& mod = alg.modulus();
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const Quaternion x = alg.make(ctx.rng.below(mod), ctx.rng.below(mod),
                                      ctx.rng.below(mod), ctx.rng.below(mod));
        const Quaternion y = alg.make(ctx.rng.below(mod), ctx.rng.below(mod),
                                      ctx.rng.below(mod), ctx.rng.below(mod));
        const Quaternion z = alg.make(ctx.rng.below(mod), ctx.rng.below(mod),
                                      ctx.rng.below(mod), ctx.rng.below(mod));
        if (!alg.equal(alg.mul(alg.mul(x, y), z), alg.mul(x, alg.mul(y, z))))
            return "multiplication is not associative";
        if (!alg.equal(alg.conj(alg.mul(x, y)), alg.mul(alg.conj(y), alg.conj(x))))
            return "bar map is not an anti-homomorphism";
    }
    return {};
}

std::string check_quat_filtration(Ctx& ctx) {
    QuaternionGroup g = make_quat(ctx, 2);
    const unsigned N = g.params().precision;
    unsigned exact_hits = 0, odd_trials = 0;
    const unsigned total = std::max(200u, ctx.cfg.trials);
    for (unsigned i = 0; i < total; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(ctx.rng.next() % 2);
        const unsigned l = 1 + static_cast<unsigned>(ctx.rng.next() % 2);
        if (k + l > 2 * N - 3) continue;
        const SL1Element x = g.sample_s_element(k, ctx.rng);
        const SL1Element y = g.sample_s_element(l, ctx.rng);
        const SL1Element c = g.sl1_commutator(x, y);
        const unsigned lvl = g.exact_level(c.q);
        if (lvl < k + l) return "commutator valuation below k + l";
        if (k % 2 == 1) {
            ++odd_trials;
            if (lvl == k + l) ++exact_hits;
        }
    }
    if (odd_trials >= 50 && 2 * exact_hits < odd_trials)
        return "odd-layer commutators rarely achieve the exact level";
    return {};
}

std::string check_quat_p_power_shift(Ctx& ctx) {
    QuaternionGroup g = make_quat(ctx, 2);
    const unsigned N = g.params().precision;
    unsigned exact_hits = 0, total = 0;
    for (unsigned i = 0; i < std::max(200u, ctx.cfg.trials); ++i) {
        const unsigned k = 1 + static_cast<unsigned>(ctx.rng.next() % 2);
        if (k + 2 > 2 * N - 3) continue;
        const SL1Element x = g.sample_s_element(k, ctx.rng);
        const SL1Element xp = g.sl1_pow(x, g.prime());
        const unsigned lvl = g.exact_level(xp.q);
        if (lvl < k + 2) return "p-th power did not climb two filtration steps";
        ++total;
        if (lvl == k + 2) ++exact_hits;
    }
    if (total >= 50 && 2 * exact_hits < total) return "p-th power level rarely exact";
    return {};
}

std::string check_quat_layer_exponent(Ctx& ctx) {
    const unsigned n = 2;
    QuaternionGroup g = make_quat(ctx, n);
    const unsigned i0 = g.params().i0;
    const unsigned alpha = g.params().alpha;
    unsigned sharp = 0, total = 0;
    for (unsigned i = 0; i < 200; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(ctx.rng.next() % n);
        const SL1Element x = g.sample_s_element(k * i0, ctx.rng);
        const SL1Element xq = g.sl1_pow(x, pow_ui(g.prime(), alpha));
        if (g.exact_level(xq.q) < (k + 1) * i0)
            return "p^alpha-th power not in the next layer";
        ++total;
        if (alpha == 1) {
            ++sharp;  // x itself sits at exact level k * i0 < (k+1) * i0
        } else {
            const SL1Element xr = g.sl1_pow(x, pow_ui(g.prime(), alpha - 1));
            if (g.exact_level(xr.q) < (k + 1) * i0) ++sharp;
        }
    }
    if (2 * sharp < total) return "layer exponent p^alpha rarely sharp";
    return {};
}

std::string check_quat_power_congruence(Ctx& ctx) {
    for (unsigned k = 1; k <= ctx.cfg.quat_kmax; ++k) {
        QuaternionGroup g(ctx.cfg.quat_p, ctx.cfg.quat_alpha, std::max(2u, k + 1));
        const unsigned i0 = g.params().i0;
        const unsigned layer = (k + 1) * i0;
        for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
            const SL1Element x = g.sample_s_element(k * i0, ctx.rng);
            const mpz_class m = ctx.rng.below(pow_ui(g.prime(), 2 * g.params().alpha + 1));
            const Quaternion fast = g.pow_layer_formula(x, m, k);
            const SL1Element slow = g.sl1_pow(x, m);
            if (!g.equal_mod_layer(fast, slow.q, layer))
                return "closed-form power disagrees with square-and-multiply at layer " +
                       std::to_string(layer);
        }
    }
    return {};
}

std::string check_heis_closed_forms(Ctx& ctx) {
    HeisenbergGroup g(ctx.cfg.heis_p, ctx.cfg.heis_m);
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const HeisElement x = g.random_element(ctx.rng);
        const HeisElement y = g.random_element(ctx.rng);
        const mpz_class a = ctx.rng.below(g.p() * g.p());
        if (!g.equal(g.pow_closed_form(x, a), pow(g, x, a)))
            return "closed-form power disagrees with square-and-multiply";
        if (!g.equal(g.commutator_closed_form(x, y), commutator(g, x, y)))
            return "closed-form commutator disagrees with x y x^-1 y^-1";
        if (!g.equal(g.pow_closed_form(x, g.p()), g.identity()))
            return "group does not have exponent p";
    }
    return {};
}

std::string check_heis_nondegeneracy(Ctx& ctx) {
    HeisenbergGroup g(ctx.cfg.heis_p, ctx.cfg.heis_m);
    const auto gens = g.standard_generators();
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        HeisElement x = g.random_element(ctx.rng);
        if (g.is_central(x)) continue;
        bool moved = false;
        for (const auto& e : gens)
            if (!g.equal(commutator(g, x, e), g.identity())) moved = true;
        if (!moved) return "non-central element commutes with every standard generator";
    }
    return {};
}

std::string check_cyclic_closed_forms(Ctx& ctx) {
    CyclicTripleGroup g(ctx.cfg.cyc_p, ctx.cfg.cyc_alpha);
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const CyclicTripleElement a = g.random_element(ctx.rng);
        const CyclicTripleElement b = g.random_element(ctx.rng);
        const mpz_class e = ctx.rng.below(g.modulus() * g.modulus());
        if (!g.equal(g.pow_closed_form(a, e), pow(g, a, e)))
            return "closed-form power disagrees with square-and-multiply";
        if (!g.equal(g.commutator_closed_form(a, b), commutator(g, a, b)))
            return "closed-form commutator disagrees with x y x^-1 y^-1";
    }
    const CyclicTripleElement c = g.commutator_closed_form(g.make(1, 0, 0), g.make(0, 1, 0));
    if (order_p_power(g, c, g.p(), g.alpha() + 1) != g.alpha())
        return "[e1, e2] does not have order p^alpha";
    return {};
}

std::string check_multilinearity(Ctx& ctx) {
    // slot substitution g_i^(r+s) vs product of the single-exponent values,
    // and [g_1^r, g_2, ...] = c^r, on all three platforms
    auto test = [&](const auto& g, unsigned n) -> std::string {
        using G = std::decay_t<decltype(g)>;
        Rng rng = ctx.rng.fork(ctx.rng.next());
        const ProtocolParams<G> params = setup(g, n, rng);
        const auto& gens = params.generators;
        for (unsigned trial = 0; trial < 8; ++trial) {
            const mpz_class r = rng.below(params.key_order);
            const mpz_class s = rng.below(params.key_order);
            for (unsigned slot = 0; slot < n; ++slot) {
                auto xs = gens;
                xs[slot] = pow(g, gens[slot], r + s);
                const auto lhs = nested_commutator<G>(g, {xs.data(), xs.size()});
                xs[slot] = pow(g, gens[slot], r);
                const auto c_r = nested_commutator<G>(g, {xs.data(), xs.size()});
                xs[slot] = pow(g, gens[slot], s);
                const auto c_s = nested_commutator<G>(g, {xs.data(), xs.size()});
                if (!g.equal(lhs, g.mul(c_r, c_s))) return "slot map is not additive";
            }
            auto xs = gens;
            xs[0] = pow(g, gens[0], r);
            if (!g.equal(nested_commutator<G>(g, {xs.data(), xs.size()}),
                         pow(g, params.key_base, r)))
                return "[g1^r, g2, ...] != c^r";
        }
        return {};
    };
    HeisenbergGroup heis(ctx.cfg.heis_p, ctx.cfg.heis_m);
    if (auto err = test(heis, 2); !err.empty()) return "heisenberg: " + err;
    CyclicTripleGroup cyc(ctx.cfg.cyc_p, ctx.cfg.cyc_alpha);
    if (auto err = test(cyc, 2); !err.empty()) return "cyclic-triple: " + err;
    QuaternionGroup quat = make_quat(ctx, 3);
    if (auto err = test(quat, 3); !err.empty()) return "quaternion: " + err;
    return {};
}

std::string check_pow_oracle(Ctx& ctx) {
    HeisenbergGroup g(ctx.cfg.heis_p, ctx.cfg.heis_m);
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const HeisElement x = g.random_element(ctx.rng);
        HeisElement acc = g.identity();
        for (unsigned e = 0; e <= 64; ++e) {
            if (!g.equal(pow(g, x, e), acc)) return "pow disagrees with iterated multiplication";
            acc = g.mul(acc, x);
        }
    }
    return {};
}

std::string check_slot_kernel_index(Ctx& ctx) {
    HeisenbergGroup heis(ctx.cfg.heis_p, 1);
    const auto hgens = heis.standard_generators();
    const std::vector<HeisElement> hg{hgens[0], hgens[1]};
    for (unsigned slot = 0; slot < 2; ++slot) {
        const std::uint64_t index =
            brute_force_slot_kernel<HeisenbergGroup>(heis, {hg.data(), hg.size()}, slot);
        if (mpz_class(static_cast<unsigned long>(index)) != heis.p())
            return "heisenberg slot-kernel index != p";
    }
    CyclicTripleGroup cyc(ctx.cfg.cyc_p, ctx.cfg.cyc_alpha);
    const std::vector<CyclicTripleElement> cg{cyc.make(1, 0, 0), cyc.make(0, 1, 0)};
    for (unsigned slot = 0; slot < 2; ++slot) {
        const std::uint64_t index =
            brute_force_slot_kernel<CyclicTripleGroup>(cyc, {cg.data(), cg.size()}, slot);
        if (mpz_class(static_cast<unsigned long>(index)) != cyc.modulus())
            return "cyclic-triple slot-kernel index != p^alpha";
    }
    return {};
}

std::string check_protocol(Ctx& ctx) {
    auto test = [&](const auto& g, unsigned n) -> std::string {
        using G = std::decay_t<decltype(g)>;
        Rng rng = ctx.rng.fork(ctx.rng.next());
        for (unsigned i = 0; i < 8; ++i) {
            const ProtocolParams<G> params = setup(g, n, rng);
            const ExchangeResult<G> ex = run_exchange(g, params, rng, true);
            if (!ex.consistent) return "derived keys disagree";
            mpz_class prod = 1;
            for (const auto& k : ex.keys) prod = prod * k.exponent % params.key_order;
            if (!g.equal(ex.derived[0], pow(g, params.key_base, prod)))
                return "derived key != c^(a_1...a_{n+1})";
            // two-user degeneration
            const std::vector<unsigned> subset{1, n + 1};
            const auto k1 = degenerate_key(g, params, ex.transcript, subset, 1, ex.keys[0]);
            const auto k2 = degenerate_key(g, params, ex.transcript, subset, n + 1, ex.keys[n]);
            if (!g.equal(k1, k2)) return "degenerate subset keys disagree";
        }
        return {};
    };
    HeisenbergGroup heis(ctx.cfg.heis_p, ctx.cfg.heis_m);
    if (auto err = test(heis, 2); !err.empty()) return "heisenberg: " + err;
    CyclicTripleGroup cyc(ctx.cfg.cyc_p, ctx.cfg.cyc_alpha);
    if (auto err = test(cyc, 2); !err.empty()) return "cyclic-triple: " + err;
    QuaternionGroup quat = make_quat(ctx, 2);
    if (auto err = test(quat, 2); !err.empty()) return "quaternion: " + err;
    return {};
}

std::string check_pohlig_hellman(Ctx& ctx) {
    CyclicTripleGroup g(ctx.cfg.cyc_p, ctx.cfg.cyc_alpha);
    const CyclicTripleElement base = g.make(0, 0, 1);
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const mpz_class e = ctx.rng.below(g.modulus());
        const CyclicTripleElement target = pow(g, base, e);
        PhStats stats;
        OpCounter ops;
        Counted<CyclicTripleGroup> cg(g, ops);
        const mpz_class rec =
            pohlig_hellman(cg, base, target, g.p(), g.alpha(), std::uint64_t{1} << 26, &stats);
        if (rec != e) return "recovered exponent differs from the planted one";
        if (stats.bsgs_calls != g.alpha()) return "digit count != alpha";
    }
    return {};
}

std::string check_attack_soundness(Ctx& ctx) {
    Rng rng = ctx.rng.fork(99);
    HeisenbergGroup heis(ctx.cfg.heis_p, ctx.cfg.heis_m);
    {
        const auto params = setup(heis, 2, rng);
        const auto ex = run_exchange(heis, params, rng, true);
        const auto generic = run_named_attack("generic", heis, ex.transcript, DlogBudget{});
        if (!generic.success) return "generic attack failed on heisenberg";
        const auto linear =
            run_named_attack("heisenberg-linear", heis, ex.transcript, DlogBudget{});
        if (!linear.success) return "linear attack failed on heisenberg";
    }
    QuaternionGroup quat = make_quat(ctx, 2);
    {
        const auto params = setup(quat, 2, rng);
        const auto ex = run_exchange(quat, params, rng, true);
        const auto generic = run_named_attack("generic", quat, ex.transcript, DlogBudget{});
        if (!generic.success) return "generic attack failed on quaternion";
        const auto linear =
            run_named_attack("quaternion-linear", quat, ex.transcript, DlogBudget{});
        if (!linear.success) return "linear attack failed on quaternion";
    }
    return {};
}

std::string check_cdh_harness(Ctx& ctx) {
    HeisenbergGroup g(ctx.cfg.heis_p, ctx.cfg.heis_m);
    Rng rng = ctx.rng.fork(7);
    const auto params = setup(g, 2, rng);
    const auto& c = params.key_base;
    for (unsigned i = 0; i < ctx.cfg.trials; ++i) {
        const mpz_class x = rng.below(params.key_order);
        const mpz_class y = rng.below(params.key_order);
        const HeisElement got = cdh_from_eavesdropper(g, c, pow(g, c, x), pow(g, c, y),
                                                      g.prime(), params.alpha);
        if (!g.equal(got, pow(g, c, x * y % params.key_order)))
            return "harness did not return c^(xy)";
    }
    return {};
}

} // namespace

std::vector<CheckResult> run_verify(const VerifyConfig& config) {
    const std::pair<const char*, CheckFn> checks[] = {
        {"quaternion.defining-relations", check_quat_relations},
        {"numtheory.inverse-roundtrip", check_inverse_roundtrip},
        {"numtheory.qnr", check_qnr},
        {"numtheory.valuation-additivity", check_valuation_additivity},
        {"numtheory.hensel", check_hensel},
        {"quaternion.associativity", check_quat_associativity},
        {"quaternion.filtration-commutator", check_quat_filtration},
        {"quaternion.p-power-shift", check_quat_p_power_shift},
        {"quaternion.layer-exponent", check_quat_layer_exponent},
        {"quaternion.power-congruence", check_quat_power_congruence},
        {"heisenberg.closed-forms", check_heis_closed_forms},
        {"heisenberg.nondegeneracy", check_heis_nondegeneracy},
        {"cyclic.closed-forms", check_cyclic_closed_forms},
        {"group.multilinearity", check_multilinearity},
        {"group.pow-oracle", check_pow_oracle},
        {"group.slot-kernel-index", check_slot_kernel_index},
        {"protocol.consistency", check_protocol},
        {"attacks.pohlig-hellman", check_pohlig_hellman},
        {"attacks.soundness", check_attack_soundness},
        {"attacks.cdh-harness", check_cdh_harness},
    };
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : checks) {
        Ctx ctx{config, Rng(config.seed)};
        CheckResult res;
        res.name = name;
        try {
            const std::string detail = fn(ctx);
            res.pass = detail.empty();
            res.detail = detail;
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = e.what();
        }
        results.push_back(std::move(res));
    }
    return results;
}

} // namespace nilnike
