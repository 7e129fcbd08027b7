#include "nilnike/cyclic_triple.hpp"

#include "nilnike/encoding.hpp"
#include "nilnike/errors.hpp"
#include "nilnike/numtheory.hpp"

namespace nilnike {

CyclicTripleGroup::CyclicTripleGroup(mpz_class p, unsigned alpha)
    : p_(std::move(p)), alpha_(alpha) {
    if (alpha_ < 1) fail("BadConfig", "cyclic-triple needs alpha >= 1");
    if (p_ == 2) fail("BadConfig", "cyclic-triple needs an odd prime");
    if (!is_probable_prime(p_)) fail("BadConfig", "p is not prime");
    q_ = pow_ui(p_, alpha_);
}

mpz_class CyclicTripleGroup::reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
    return r;
}

CyclicTripleElement CyclicTripleGroup::identity() const { return Element{0, 0, 0}; }

CyclicTripleElement CyclicTripleGroup::make(mpz_class x, mpz_class y, mpz_class z) const {
    return Element{reduce(x), reduce(y), reduce(z)};
}

CyclicTripleElement CyclicTripleGroup::mul(const Element& a, const Element& b) const {
    return Element{reduce(a.x + b.x), reduce(a.y + b.y), reduce(a.z + b.z + a.x * b.y)};
}

CyclicTripleElement CyclicTripleGroup::inv(const Element& a) const {
    return Element{reduce(-a.x), reduce(-a.y), reduce(-a.z + a.x * a.y)};
}

bool CyclicTripleGroup::equal(const Element& a, const Element& b) const {
    return a.x == b.x && a.y == b.y && a.z == b.z;
}

std::vector<std::uint8_t> CyclicTripleGroup::serialize(const Element& a) const {
    const std::size_t w = coord_width(q_);
    std::vector<std::uint8_t> out;
    out.reserve(1 + 3 * w);
    out.push_back(kTag);
    append_coord(out, a.x, w);
    append_coord(out, a.y, w);
    append_coord(out, a.z, w);
    return out;
}

CyclicTripleElement CyclicTripleGroup::deserialize(std::span<const std::uint8_t> bytes) const {
    const std::size_t w = coord_width(q_);
    if (bytes.size() != 1 + 3 * w || bytes[0] != kTag)
        fail("BadElement", "malformed cyclic-triple element encoding");
    auto body = bytes.subspan(1);
    Element r{read_coord(body, 0, w), read_coord(body, 1, w), read_coord(body, 2, w)};
    if (r.x >= q_ || r.y >= q_ || r.z >= q_) fail("BadElement", "coordinate out of range");
    return r;
}

CyclicTripleElement CyclicTripleGroup::pow_closed_form(const Element& a,
                                                       const mpz_class& e) const {
    return Element{reduce(e * a.x), reduce(e * a.y), reduce(e * a.z + binom2(e) * a.x * a.y)};
}

CyclicTripleElement CyclicTripleGroup::commutator_closed_form(const Element& a,
                                                              const Element& b) const {
    return Element{0, 0, reduce(a.x * b.y - b.x * a.y)};
}

CyclicTripleElement CyclicTripleGroup::random_element(Rng& rng) const {
    return Element{rng.below(q_), rng.below(q_), rng.below(q_)};
}

bool CyclicTripleGroup::key_base_ok(const Element& c) const {
    if (c.x != 0 || c.y != 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.z.get_mpz_t(), p_.get_mpz_t());
    return c.z != 0 && g == 1;
}

} // namespace nilnike
