// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every threshold is pinned here; seeds are fixed so reruns are
// reproducible.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nilnike/attacks.hpp"
#include "nilnike/bench.hpp"
#include "nilnike/cyclic_triple.hpp"
#include "nilnike/group_ops.hpp"
#include "nilnike/heisenberg.hpp"
#include "nilnike/protocol.hpp"
#include "nilnike/quaternion.hpp"

using namespace nilnike;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const mpz_class kP31("2147483647");           // 2^31 - 1
const mpz_class kP61("2305843009213693951");  // 2^61 - 1

// ---------------------------------------------------------------- criterion 1
std::string protocol_correctness() {
    const auto start = std::chrono::steady_clock::now();
    unsigned total = 0;

    auto consistent_runs = [&](const auto& g, unsigned n, unsigned reps, Rng& rng) -> bool {
        using G = std::decay_t<decltype(g)>;
        for (unsigned i = 0; i < reps; ++i) {
            const ProtocolParams<G> params = setup(g, n, rng);
            const ExchangeResult<G> ex = run_exchange(g, params, rng, true);
            if (!ex.consistent) return false;
            const auto bytes = g.serialize(ex.derived[0]);
            for (const auto& k : ex.derived)
                if (g.serialize(k) != bytes) return false;
            ++total;
        }
        return true;
    };

    Rng rng(1001);
    for (const mpz_class& p : {mpz_class(5), mpz_class(101), kP31}) {
        for (unsigned m : {1u, 3u}) {
            const HeisenbergGroup g(p, m);
            if (!consistent_runs(g, 2, 17, rng))
                return "heisenberg p=" + p.get_str() + " m=" + std::to_string(m);
        }
    }
    for (unsigned alpha = 1; alpha <= 4; ++alpha) {
        const CyclicTripleGroup g(3, alpha);
        if (!consistent_runs(g, 2, 25, rng)) return "cyclic-triple alpha=" + std::to_string(alpha);
    }
    for (const mpz_class& p : {mpz_class(5), mpz_class(7)}) {
        for (unsigned alpha = 1; alpha <= 3; ++alpha) {
            for (unsigned n = 1; n <= 5; ++n) {
                const QuaternionGroup g(p, alpha, n);
                if (!consistent_runs(g, n, 4, rng))
                    return "quaternion p=" + p.get_str() + " alpha=" + std::to_string(alpha) +
                           " n=" + std::to_string(n);
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 60.0) return "runtime " + std::to_string(elapsed) + " s exceeds 60 s";
    return "";
}

// ---------------------------------------------------------------- criterion 2
std::string slot_kernel_indices() {
    Rng rng(1002);
    // heisenberg, standard and random nondegenerate generator pairs
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        const HeisenbergGroup g(p, 1);
        const auto gens = g.standard_generators();
        std::vector<HeisElement> pair{gens[0], gens[1]};
        for (unsigned slot = 0; slot < 2; ++slot) {
            const auto index =
                brute_force_slot_kernel<HeisenbergGroup>(g, {pair.data(), pair.size()}, slot);
            if (mpz_class(static_cast<unsigned long>(index)) != g.p())
                return "heisenberg standard generators, p=" + std::to_string(p);
        }
        for (int i = 0; i < 3; ++i) {
            const auto params = setup(g, 2, rng);
            for (unsigned slot = 0; slot < 2; ++slot) {
                const auto index = brute_force_slot_kernel<HeisenbergGroup>(
                    g, {params.generators.data(), params.generators.size()}, slot);
                if (mpz_class(static_cast<unsigned long>(index)) != g.p())
                    return "heisenberg sampled generators, p=" + std::to_string(p);
            }
        }
    }
    // cyclic-triple with p^alpha up to 81
    struct PA {
        long p;
        unsigned alpha;
    };
    for (const PA pa : {PA{3, 1}, PA{3, 2}, PA{3, 3}, PA{3, 4}, PA{5, 1}, PA{5, 2}, PA{7, 1},
                        PA{7, 2}}) {
        const CyclicTripleGroup g(pa.p, pa.alpha);
        const std::vector<CyclicTripleElement> gens{g.make(1, 0, 0), g.make(0, 1, 0)};
        for (unsigned slot = 0; slot < 2; ++slot) {
            const auto index =
                brute_force_slot_kernel<CyclicTripleGroup>(g, {gens.data(), gens.size()}, slot);
            if (mpz_class(static_cast<unsigned long>(index)) != g.modulus())
                return "cyclic-triple p=" + std::to_string(pa.p) +
                       " alpha=" + std::to_string(pa.alpha);
        }
        for (int i = 0; i < 3; ++i) {
            const auto params = setup(g, 2, rng);
            for (unsigned slot = 0; slot < 2; ++slot) {
                const auto index = brute_force_slot_kernel<CyclicTripleGroup>(
                    g, {params.generators.data(), params.generators.size()}, slot);
                if (mpz_class(static_cast<unsigned long>(index)) != g.modulus())
                    return "cyclic-triple sampled generators, p=" + std::to_string(pa.p);
            }
        }
    }
    return "";
}

// ---------------------------------------------------------------- criterion 3
std::string oracle_equivalence() {
    Rng rng(1003);
    // heisenberg: 1000 random (x, a)
    {
        unsigned done = 0;
        for (const auto& pm : {std::pair<mpz_class, unsigned>{5, 1}, {101, 3}, {kP31, 1}}) {
            const HeisenbergGroup g(pm.first, pm.second);
            for (int i = 0; i < 334; ++i) {
                const HeisElement x = g.random_element(rng);
                const mpz_class a = rng.below(g.p() * g.p());
                if (!g.equal(g.pow_closed_form(x, a), pow(g, x, a)))
                    return "heisenberg closed form mismatch at p=" + pm.first.get_str();
                ++done;
            }
        }
        if (done < 1000) return "heisenberg: fewer than 1000 trials";
    }
    // cyclic-triple: 1000 random (x, e)
    {
        unsigned done = 0;
        for (const auto& pa : {std::pair<long, unsigned>{3, 4}, {101, 3}, {7, 2}}) {
            const CyclicTripleGroup g(pa.first, pa.second);
            for (int i = 0; i < 334; ++i) {
                const CyclicTripleElement x = g.random_element(rng);
                const mpz_class e = rng.below(g.modulus() * g.modulus());
                if (!g.equal(g.pow_closed_form(x, e), pow(g, x, e)))
                    return "cyclic-triple closed form mismatch at p=" + std::to_string(pa.first);
                ++done;
            }
        }
        if (done < 1000) return "cyclic-triple: fewer than 1000 trials";
    }
    // quaternion layer power formula: 1000 random (x, m) across (p, alpha, k)
    {
        struct Combo {
            long p;
            unsigned alpha;
            unsigned k;
        };
        unsigned done = 0;
        for (const Combo combo : {Combo{5, 1, 1}, Combo{5, 1, 2}, Combo{7, 2, 1},
                                  Combo{7, 2, 2}, Combo{13, 1, 2}}) {
            const QuaternionGroup g(combo.p, combo.alpha, std::max(2u, combo.k + 1));
            const unsigned i0 = g.params().i0;
            const unsigned layer = (combo.k + 1) * i0;
            for (int i = 0; i < 200; ++i) {
                const SL1Element x = g.sample_s_element(combo.k * i0, rng);
                const mpz_class m = rng.below(pow_ui(g.prime(), 2 * combo.alpha + 1));
                const Quaternion fast = g.pow_layer_formula(x, m, combo.k);
                const Quaternion slow = g.sl1_pow(x, m).q;
                if (!g.equal_mod_layer(fast, slow, layer))
                    return "layer power mismatch at p=" + std::to_string(combo.p) +
                           " alpha=" + std::to_string(combo.alpha) +
                           " k=" + std::to_string(combo.k);
                ++done;
            }
        }
        if (done < 1000) return "quaternion: fewer than 1000 trials";
    }
    return "";
}

// ---------------------------------------------------------------- criterion 4
std::string valuation_suite() {
    Rng rng(1004);
    // commutator filtration and p-power shift, 100% of trials
    {
        const QuaternionGroup g(5, 1, 2);
        for (int i = 0; i < 300; ++i) {
            const unsigned k = 1 + rng.next() % 2;
            const unsigned l = 1 + rng.next() % 2;
            const SL1Element x = g.sample_s_element(k, rng);
            const SL1Element y = g.sample_s_element(l, rng);
            if (g.exact_level(g.sl1_commutator(x, y).q) < k + l)
                return "commutator below layer k+l";
        }
        for (int i = 0; i < 300; ++i) {
            const unsigned k = 1 + rng.next() % 3;
            const SL1Element x = g.sample_s_element(k, rng);
            if (g.exact_level(g.sl1_pow(x, g.prime()).q) < k + 2)
                return "p-th power below layer k+2";
        }
    }
    // layer exponent p^alpha: bound 100%, generic sharpness >= 50% of 200
    for (unsigned alpha : {1u, 2u}) {
        const QuaternionGroup g(7, alpha, 2);
        const unsigned i0 = g.params().i0;
        unsigned sharp = 0;
        for (int i = 0; i < 200; ++i) {
            const unsigned k = 1 + rng.next() % 2;
            const SL1Element x = g.sample_s_element(k * i0, rng);
            if (g.exact_level(g.sl1_pow(x, pow_ui(g.prime(), alpha)).q) < (k + 1) * i0)
                return "p^alpha power below the next layer (alpha=" + std::to_string(alpha) +
                       ")";
            const SL1Element below =
                alpha == 1 ? x : g.sl1_pow(x, pow_ui(g.prime(), alpha - 1));
            if (g.exact_level(below.q) < (k + 1) * i0) ++sharp;
        }
        if (2 * sharp < 200)
            return "exponent sharpness below 1/2 (alpha=" + std::to_string(alpha) + ")";
    }
    return "";
}

// ---------------------------------------------------------------- criterion 5
std::string pohlig_hellman_bounds() {
    Rng rng(1005);
    struct Combo {
        mpz_class p;
        unsigned alpha;
    };
    const Combo combos[] = {{mpz_class(3), 4},
                            {mpz_class(101), 3},
                            {mpz_class(65521), 2},
                            {mpz_class(1048573), 2},
                            {mpz_class(1048573), 4}};
    for (const Combo& combo : combos) {
        if (!is_probable_prime(combo.p)) return "test prime is composite: " + combo.p.get_str();
        const CyclicTripleGroup g(combo.p, combo.alpha);
        const CyclicTripleElement base = g.make(0, 0, 1);
        const std::uint64_t bound =
            2 * combo.alpha * (ceil_sqrt(combo.p).get_ui() + 2) + 2048 * combo.alpha;
        for (int i = 0; i < 10; ++i) {
            const mpz_class planted = rng.below(g.modulus());
            const CyclicTripleElement target = pow(g, base, planted);
            OpCounter ops;
            const Counted<CyclicTripleGroup> cg(g, ops);
            PhStats stats;
            const auto start = std::chrono::steady_clock::now();
            const mpz_class recovered = pohlig_hellman(cg, base, target, g.p(), combo.alpha,
                                                       std::uint64_t{1} << 26, &stats);
            const double secs = seconds_since(start);
            if (recovered != planted)
                return "wrong exponent at p=" + combo.p.get_str() +
                       " alpha=" + std::to_string(combo.alpha);
            if (stats.bsgs_calls != combo.alpha) return "digit count differs from alpha";
            if (ops.mults > bound)
                return "ops " + std::to_string(ops.mults) + " exceed the counted bound " +
                       std::to_string(bound);
            if (secs >= 5.0) return "per-instance runtime reached 5 s";
        }
    }
    return "";
}

// ---------------------------------------------------------------- criterion 6
std::string attack_soundness() {
    Rng rng(1006);
    // generic eavesdropper: 100 heisenberg instances plus cyclic and
    // quaternion batches
    {
        const HeisenbergGroup heis(101, 1);
        for (int i = 0; i < 100; ++i) {
            const auto params = setup(heis, 2, rng);
            const auto ex = run_exchange(heis, params, rng, true);
            const auto out = eavesdrop_generic(heis, ex.transcript);
            if (!out.success || !heis.equal(*out.key, ex.derived[0]))
                return "generic attack failed on heisenberg";
        }
        const CyclicTripleGroup cyc(3, 3);
        for (int i = 0; i < 25; ++i) {
            const auto params = setup(cyc, 2, rng);
            const auto ex = run_exchange(cyc, params, rng, true);
            const auto out = eavesdrop_generic(cyc, ex.transcript);
            if (!out.success || !cyc.equal(*out.key, ex.derived[0]))
                return "generic attack failed on cyclic-triple";
        }
        const QuaternionGroup quat(5, 2, 3);
        for (int i = 0; i < 25; ++i) {
            const auto params = setup(quat, 3, rng);
            const auto ex = run_exchange(quat, params, rng, true);
            const auto out = eavesdrop_generic(quat, ex.transcript);
            if (!out.success || !quat.equal(*out.key, ex.derived[0]))
                return "generic attack failed on quaternion";
        }
    }
    // heisenberg linear: 100 instances including 31- and 61-bit primes
    {
        unsigned done = 0;
        for (const auto& pm : {std::pair<mpz_class, unsigned>{5, 1}, {kP31, 1}, {kP61, 3}}) {
            const HeisenbergGroup g(pm.first, pm.second);
            const unsigned reps = pm.first == 5 ? 34 : 33;
            for (unsigned i = 0; i < reps; ++i) {
                const auto params = setup(g, 2, rng);
                const auto ex = run_exchange(g, params, rng, true);
                const auto out = attack_heisenberg_linear(g, ex.transcript);
                if (!out.success || !g.equal(*out.key, ex.derived[0]))
                    return "linear attack failed on heisenberg p=" + pm.first.get_str();
                ++done;
            }
        }
        if (done < 100) return "heisenberg-linear: fewer than 100 instances";
    }
    // quaternion linear: 100 instances across alpha and class
    {
        struct Combo {
            long p;
            unsigned alpha;
            unsigned n;
            unsigned reps;
        };
        unsigned done = 0;
        for (const Combo combo :
             {Combo{5, 1, 2, 40}, Combo{7, 2, 3, 30}, Combo{5, 3, 2, 30}}) {
            const QuaternionGroup g(combo.p, combo.alpha, combo.n);
            for (unsigned i = 0; i < combo.reps; ++i) {
                const auto params = setup(g, combo.n, rng);
                const auto ex = run_exchange(g, params, rng, true);
                const auto out = attack_quaternion_linear(g, ex.transcript);
                if (!out.success || !g.equal(*out.key, ex.derived[0]))
                    return "linear attack failed on quaternion p=" + std::to_string(combo.p);
                if (out.exponents[0] != ex.keys[combo.n].exponent)
                    return "recovered exponent differs from the planted one";
                ++done;
            }
        }
        if (done < 100) return "quaternion-linear: fewer than 100 instances";
    }
    return "";
}

// ---------------------------------------------------------------- criterion 7
std::string complexity_separation() {
    // the 4x grid: mean generic ops must roughly double per step while the
    // linear attack stays flat
    BenchConfig config;
    config.seed = 1007;
    config.instances = 32;
    config.workers = 3;
    config.algorithms = {"generic", "heisenberg-linear"};
    for (const char* p : {"101", "401", "1601"}) {
        PlatformDescriptor d;
        d.family = Family::heisenberg;
        d.p = mpz_class(p);
        d.m = 1;
        d.n = 2;
        config.grid.push_back(d);
    }
    const auto rows = run_bench(config);
    std::vector<std::uint64_t> generic_ops, linear_ops;
    for (const auto& row : rows) {
        if (row.algorithm == "generic") generic_ops.push_back(row.ops);
        if (row.algorithm == "heisenberg-linear") linear_ops.push_back(row.ops);
    }
    if (generic_ops.size() != 3 || linear_ops.size() != 3) return "missing bench rows";
    for (int step = 0; step < 2; ++step) {
        const double ratio =
            static_cast<double>(generic_ops[step + 1]) / static_cast<double>(generic_ops[step]);
        if (ratio < 1.5 || ratio > 3.0) {
            std::ostringstream ss;
            ss << "generic ops ratio " << ratio << " outside [1.5, 3] (ops " << generic_ops[0]
               << ", " << generic_ops[1] << ", " << generic_ops[2] << ")";
            return ss.str();
        }
    }
    const auto [lin_min, lin_max] = std::minmax_element(linear_ops.begin(), linear_ops.end());
    if (static_cast<double>(*lin_max) >= 2.0 * static_cast<double>(*lin_min))
        return "linear ops vary by 2x or more across the grid";

    // 61-bit prime: both linear attacks finish fast, the generic attack
    // refuses under the 2^26 operation budget
    Rng rng(1077);
    {
        const HeisenbergGroup g(kP61, 1);
        const auto params = setup(g, 2, rng);
        const auto ex = run_exchange(g, params, rng, true);
        const auto linear = attack_heisenberg_linear(g, ex.transcript);
        if (!linear.success || !g.equal(*linear.key, ex.derived[0]))
            return "heisenberg linear attack failed at 61-bit p";
        if (linear.millis >= 100.0) return "heisenberg linear attack took 100 ms or more";
        const auto generic = eavesdrop_generic(g, ex.transcript);
        if (!generic.refused || generic.error != "BudgetExceeded")
            return "generic attack did not refuse at 61-bit p";
    }
    {
        const QuaternionGroup g(kP61, 2, 2);
        const auto params = setup(g, 2, rng);
        const auto ex = run_exchange(g, params, rng, true);
        const auto linear = attack_quaternion_linear(g, ex.transcript);
        if (!linear.success || !g.equal(*linear.key, ex.derived[0]))
            return "quaternion linear attack failed at 61-bit p";
        if (linear.millis >= 100.0) return "quaternion linear attack took 100 ms or more";
        const auto generic = eavesdrop_generic(g, ex.transcript);
        if (!generic.refused || generic.error != "BudgetExceeded")
            return "generic attack did not refuse at 61-bit p";
    }
    return "";
}

// ---------------------------------------------------------------- criterion 8
std::string cdh_harness() {
    Rng rng(1008);
    auto run = [&rng](const auto& g, unsigned n) -> bool {
        using G = std::decay_t<decltype(g)>;
        const ProtocolParams<G> params = setup(g, n, rng);
        const auto& c = params.key_base;
        for (int i = 0; i < 100; ++i) {
            const mpz_class x = rng.below(params.key_order);
            const mpz_class y = rng.below(params.key_order);
            const auto got = cdh_from_eavesdropper(g, c, pow(g, c, x), pow(g, c, y), g.prime(),
                                                   params.alpha);
            if (!g.equal(got, pow(g, c, x * y % params.key_order))) return false;
        }
        return true;
    };
    if (!run(HeisenbergGroup(101, 1), 2)) return "heisenberg";
    if (!run(CyclicTripleGroup(3, 3), 2)) return "cyclic-triple";
    if (!run(QuaternionGroup(5, 2, 3), 3)) return "quaternion";
    return "";
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria = {
        {"protocol-consistency", protocol_correctness},
        {"slot-kernel-index", slot_kernel_indices},
        {"closed-form-oracle-equivalence", oracle_equivalence},
        {"filtration-valuation-laws", valuation_suite},
        {"pohlig-hellman-counted-bound", pohlig_hellman_bounds},
        {"attack-soundness", attack_soundness},
        {"complexity-separation", complexity_separation},
        {"cdh-harness", cdh_harness},
    };

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = criteria[i].run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = seconds_since(start);
        if (detail.empty()) {
            std::printf("PASS [%zu/8] %s (%.1f s)\n", i + 1, criteria[i].name, secs);
        } else {
            std::printf("FAIL [%zu/8] %s: %s (%.1f s)\n", i + 1, criteria[i].name,
                        detail.c_str(), secs);
            all_ok = false;
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
