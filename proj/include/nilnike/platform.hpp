#pragma once

#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "nilnike/cyclic_triple.hpp"
#include "nilnike/errors.hpp"
#include "nilnike/heisenberg.hpp"
#include "nilnike/quaternion.hpp"

namespace nilnike {

enum class Family { heisenberg, cyclic, quaternion };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Runtime description of a platform instance; validated when the concrete
// group is built.
struct PlatformDescriptor {
    Family family = Family::heisenberg;
    mpz_class p = 5;
    unsigned m = 1;      // heisenberg vector length
    unsigned alpha = 1;  // cyclic / quaternion
    unsigned n = 2;      // protocol class (users - 1)
    std::optional<mpz_class> t;        // quaternion nonresidue override
    std::optional<unsigned> precision; // quaternion working precision override
};

using PlatformVariant = std::variant<HeisenbergGroup, CyclicTripleGroup, QuaternionGroup>;

PlatformVariant make_platform(const PlatformDescriptor& d);

PlatformDescriptor describe(const HeisenbergGroup& g, unsigned n);
PlatformDescriptor describe(const CyclicTripleGroup& g, unsigned n);
PlatformDescriptor describe(const QuaternionGroup& g, unsigned n);

} // namespace nilnike
