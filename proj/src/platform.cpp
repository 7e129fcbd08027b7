#include "nilnike/platform.hpp"

namespace nilnike {

std::string family_name(Family f) {
    switch (f) {
        case Family::heisenberg: return "heisenberg";
        case Family::cyclic: return "cyclic-triple";
        case Family::quaternion: return "quaternion";
    }
    fail("BadConfig", "unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "heisenberg") return Family::heisenberg;
    if (name == "cyclic-triple" || name == "cyclic") return Family::cyclic;
    if (name == "quaternion") return Family::quaternion;
    fail("BadConfig", "unknown platform family: " + name);
}

PlatformVariant make_platform(const PlatformDescriptor& d) {
    switch (d.family) {
        case Family::heisenberg:
            return HeisenbergGroup(d.p, d.m);
        case Family::cyclic:
            return CyclicTripleGroup(d.p, d.alpha);
        case Family::quaternion:
            return QuaternionGroup(d.p, d.alpha, d.n, d.t, d.precision);
    }
    fail("BadConfig", "unknown family");
}

PlatformDescriptor describe(const HeisenbergGroup& g, unsigned n) {
    PlatformDescriptor d;
    d.family = Family::heisenberg;
    d.p = g.p();
    d.m = g.dim();
    d.alpha = 1;
    d.n = n;
    return d;
}

PlatformDescriptor describe(const CyclicTripleGroup& g, unsigned n) {
    PlatformDescriptor d;
    d.family = Family::cyclic;
    d.p = g.p();
    d.alpha = g.alpha();
    d.n = n;
    return d;
}

PlatformDescriptor describe(const QuaternionGroup& g, unsigned n) {
    PlatformDescriptor d;
    d.family = Family::quaternion;
    d.p = g.prime();
    d.alpha = g.alpha();
    d.n = n;
    d.t = g.params().t;
    d.precision = g.params().precision;
    return d;
}

} // namespace nilnike
