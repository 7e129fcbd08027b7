#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "nilnike/attacks.hpp"
#include "nilnike/platform.hpp"
#include "nilnike/protocol.hpp"

namespace nilnike {

// Runs one named attack against a transcript and checks the recovered key
// against the honest derived key kept in the (test-mode) transcript.
// Throws AttackMismatch when a "successful" attack recovered a wrong key.
template <ProtocolPlatform G>
AttackOutcome<G> run_named_attack(const std::string& name, const G& g, const Transcript<G>& t,
                                  const DlogBudget& budget) {
    AttackOutcome<G> out;
    if (name == "generic") {
        out = eavesdrop_generic(g, t, budget);
    } else if constexpr (std::is_same_v<G, HeisenbergGroup>) {
        if (name == "heisenberg-linear")
            out = attack_heisenberg_linear(g, t);
        else
            fail("BadConfig", "attack " + name + " does not apply to this platform");
    } else if constexpr (std::is_same_v<G, QuaternionGroup>) {
        if (name == "quaternion-linear")
            out = attack_quaternion_linear(g, t);
        else
            fail("BadConfig", "attack " + name + " does not apply to this platform");
    } else {
        fail("BadConfig", "attack " + name + " does not apply to this platform");
    }
    if (out.success && !t.derived_keys.empty()) {
        if (!g.equal(*out.key, t.derived_keys[0]))
            fail("AttackMismatch", name + " recovered a key different from the honest key");
    }
    return out;
}

inline bool attack_applies(const std::string& name, Family family) {
    if (name == "generic") return true;
    if (name == "heisenberg-linear") return family == Family::heisenberg;
    if (name == "quaternion-linear") return family == Family::quaternion;
    return false;
}

struct BenchRow {
    std::string platform;
    std::string p;
    unsigned alpha = 1;
    unsigned n = 2;
    std::string algorithm;
    std::uint64_t ops = 0;
    double millis = 0.0;
    bool refused = false;
};

struct BenchConfig {
    std::vector<PlatformDescriptor> grid;
    std::vector<std::string> algorithms{"generic"};
    unsigned instances = 32;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    DlogBudget budget;
    bool timing = true;  // false zeroes the millis column for byte-stable CSV
};

// One row per (grid point, applicable algorithm); ops and millis are means
// over the seeded instances. Row order follows the grid; each point draws
// from an RNG stream forked from (seed, point index), so the ops columns are
// reproducible.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace nilnike
