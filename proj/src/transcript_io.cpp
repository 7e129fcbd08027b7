#include "nilnike/transcript_io.hpp"

namespace nilnike {

nlohmann::json platform_json(const PlatformDescriptor& d) {
    nlohmann::json j;
    j["family"] = family_name(d.family);
    j["p"] = d.p.get_str();
    switch (d.family) {
        case Family::heisenberg:
            j["m"] = d.m;
            break;
        case Family::cyclic:
            j["alpha"] = d.alpha;
            break;
        case Family::quaternion:
            j["alpha"] = d.alpha;
            j["n"] = d.n;
            if (d.t) j["t"] = d.t->get_str();
            if (d.precision) j["N"] = *d.precision;
            break;
    }
    return j;
}

PlatformDescriptor platform_from_json(const nlohmann::json& j) {
    PlatformDescriptor d;
    d.family = family_from_name(j.at("family").get<std::string>());
    d.p = mpz_class(j.at("p").get<std::string>());
    switch (d.family) {
        case Family::heisenberg:
            d.m = j.at("m").get<unsigned>();
            break;
        case Family::cyclic:
            d.alpha = j.at("alpha").get<unsigned>();
            break;
        case Family::quaternion:
            d.alpha = j.at("alpha").get<unsigned>();
            d.n = j.at("n").get<unsigned>();
            if (j.contains("t")) d.t = mpz_class(j["t"].get<std::string>());
            if (j.contains("N")) d.precision = j["N"].get<unsigned>();
            break;
    }
    return d;
}

} // namespace nilnike
