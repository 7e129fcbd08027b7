#include "nilnike/attacks.hpp"

namespace nilnike {

AttackOutcome<HeisenbergGroup> attack_heisenberg_linear(const HeisenbergGroup& g,
                                                        const Transcript<HeisenbergGroup>& t) {
    AttackOutcome<HeisenbergGroup> out;
    out.algorithm = "heisenberg-linear";
    detail::Stopwatch clock;
    try {
        OpCounter ops;
        Counted<HeisenbergGroup> cg(g, ops);
        const unsigned n = t.params.n;
        const mpz_class& p = g.prime();

        // locate a unit coordinate among the generators' u, v parts
        unsigned gen_index = 0;
        bool in_u = true;
        unsigned coord = 0;
        bool found = false;
        for (unsigned i = 1; i <= n && !found; ++i) {
            const auto& gi = t.params.generators[i - 1];
            for (unsigned c = 0; c < g.dim() && !found; ++c) {
                if (gi.u[c] != 0) { gen_index = i; in_u = true; coord = c; found = true; }
            }
            for (unsigned c = 0; c < g.dim() && !found; ++c) {
                if (gi.v[c] != 0) { gen_index = i; in_u = false; coord = c; found = true; }
            }
        }
        if (!found) fail("NoUnitCoordinate", "all generators are central");

        const auto& gi = t.params.generators[gen_index - 1];
        const auto& share = share_at(t, gen_index, n + 1);
        const mpz_class& gen_coord = in_u ? gi.u[coord] : gi.v[coord];
        const mpz_class& share_coord = in_u ? share.u[coord] : share.v[coord];
        const mpz_class a_last =
            mod_inv(make_residue(gen_coord, p)).value * share_coord % p;

        std::vector<HeisElement> diag;
        diag.reserve(n);
        for (unsigned i = 1; i <= n; ++i) diag.push_back(share_at(t, i, i));
        const HeisElement c_prod = nested_commutator(cg, std::span<const HeisElement>(diag));
        out.key = pow(cg, c_prod, a_last);
        out.exponents = {a_last};
        out.ops = ops.mults;
        out.total_ops = ops.mults;
        out.success = true;
    } catch (const Error& e) {
        out.error = e.code();
    }
    out.millis = clock.millis();
    return out;
}

AttackOutcome<QuaternionGroup> attack_quaternion_linear(const QuaternionGroup& g,
                                                        const Transcript<QuaternionGroup>& t) {
    AttackOutcome<QuaternionGroup> out;
    out.algorithm = "quaternion-linear";
    detail::Stopwatch clock;
    try {
        OpCounter ops;
        Counted<QuaternionGroup> cg(g, ops);
        const EavesdropperView<QuaternionGroup> view = assemble_view(cg, t);
        const mpz_class& p = g.prime();
        const unsigned alpha = g.alpha();
        const unsigned layer = g.key_layer();
        const unsigned cap_high = (layer + 1) / 2;  // digits carried by b
        const unsigned cap_low = layer / 2;         // digits carried by c, d

        // pick the coordinate of c - 1 exposing the most digits of a_{n+1}
        struct Candidate {
            const mpz_class* base_coord;
            const mpz_class* share_coord;
            unsigned cap;
        };
        const Candidate candidates[3] = {
            {&view.c.b, &view.c_last.b, cap_high},
            {&view.c.c, &view.c_last.c, cap_low},
            {&view.c.d, &view.c_last.d, cap_low},
        };
        int best = -1;
        unsigned best_avail = 0;
        unsigned long best_val = 0;
        for (int idx = 0; idx < 3; ++idx) {
            const Candidate& cand = candidates[idx];
            if (*cand.base_coord == 0) continue;
            const unsigned long v = v_p(*cand.base_coord, p).order;
            if (v >= cand.cap) continue;
            const unsigned avail = cand.cap - static_cast<unsigned>(v);
            if (avail > best_avail) { best = idx; best_avail = avail; best_val = v; }
        }
        if (best < 0 || best_avail < alpha)
            fail("InsufficientPrecision",
                 "no coordinate of the key base exposes alpha digits");

        const Candidate& cand = candidates[best];
        const mpz_class pv = pow_ui(p, best_val);
        const mpz_class mod_avail = pow_ui(p, best_avail);
        const mpz_class unit = *cand.base_coord / pv;
        const mpz_class lifted = *cand.share_coord / pv;
        const mpz_class a_full =
            lifted * mod_inv(make_residue(unit, mod_avail)).value % mod_avail;
        mpz_class a_last = a_full % g.key_modulus();

        out.key = pow(cg, view.c_prod, a_last);
        out.exponents = {a_last};
        out.ops = ops.mults;
        out.total_ops = ops.mults;
        out.success = true;
    } catch (const Error& e) {
        out.error = e.code();
    }
    out.millis = clock.millis();
    return out;
}

} // namespace nilnike
