#include "nilnike/heisenberg.hpp"

#include "nilnike/encoding.hpp"
#include "nilnike/errors.hpp"
#include "nilnike/numtheory.hpp"

namespace nilnike {

HeisenbergGroup::HeisenbergGroup(mpz_class p, unsigned m) : p_(std::move(p)), m_(m) {
    if (m_ < 1) fail("BadConfig", "heisenberg needs m >= 1");
    if (p_ == 2) fail("BadConfig", "heisenberg needs an odd prime");
    if (!is_probable_prime(p_)) fail("BadConfig", "p is not prime");
}

mpz_class HeisenbergGroup::reduce(const mpz_class& x) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t());
    return r;
}

mpz_class HeisenbergGroup::dot(const std::vector<mpz_class>& a,
                               const std::vector<mpz_class>& b) const {
    mpz_class s = 0;
    for (unsigned i = 0; i < m_; ++i) s += a[i] * b[i];
    return reduce(s);
}

HeisElement HeisenbergGroup::identity() const {
    return HeisElement{std::vector<mpz_class>(m_, 0), std::vector<mpz_class>(m_, 0), 0};
}

HeisElement HeisenbergGroup::make(std::vector<mpz_class> u, std::vector<mpz_class> v,
                                  mpz_class z) const {
    if (u.size() != m_ || v.size() != m_) fail("BadElement", "coordinate vector length != m");
    for (auto& c : u) c = reduce(c);
    for (auto& c : v) c = reduce(c);
    return HeisElement{std::move(u), std::move(v), reduce(z)};
}

HeisElement HeisenbergGroup::mul(const Element& x, const Element& y) const {
    HeisElement r;
    r.u.reserve(m_);
    r.v.reserve(m_);
    for (unsigned i = 0; i < m_; ++i) r.u.push_back(reduce(x.u[i] + y.u[i]));
    for (unsigned i = 0; i < m_; ++i) r.v.push_back(reduce(x.v[i] + y.v[i]));
    r.z = reduce(x.z + y.z + dot(x.u, y.v));
    return r;
}

HeisElement HeisenbergGroup::inv(const Element& x) const {
    HeisElement r;
    r.u.reserve(m_);
    r.v.reserve(m_);
    for (unsigned i = 0; i < m_; ++i) r.u.push_back(reduce(-x.u[i]));
    for (unsigned i = 0; i < m_; ++i) r.v.push_back(reduce(-x.v[i]));
    r.z = reduce(-x.z + dot(x.u, x.v));
    return r;
}

bool HeisenbergGroup::equal(const Element& x, const Element& y) const {
    return x.u == y.u && x.v == y.v && x.z == y.z;
}

std::vector<std::uint8_t> HeisenbergGroup::serialize(const Element& x) const {
    const std::size_t w = coord_width(p_);
    std::vector<std::uint8_t> out;
    out.reserve(1 + (2 * m_ + 1) * w);
    out.push_back(kTag);
    for (const auto& c : x.u) append_coord(out, c, w);
    for (const auto& c : x.v) append_coord(out, c, w);
    append_coord(out, x.z, w);
    return out;
}

HeisElement HeisenbergGroup::deserialize(std::span<const std::uint8_t> bytes) const {
    const std::size_t w = coord_width(p_);
    if (bytes.size() != 1 + (2 * m_ + 1) * w || bytes[0] != kTag)
        fail("BadElement", "malformed heisenberg element encoding");
    auto body = bytes.subspan(1);
    HeisElement r;
    for (unsigned i = 0; i < m_; ++i) r.u.push_back(read_coord(body, i, w));
    for (unsigned i = 0; i < m_; ++i) r.v.push_back(read_coord(body, m_ + i, w));
    r.z = read_coord(body, 2 * m_, w);
    for (const auto& c : r.u)
        if (c >= p_) fail("BadElement", "coordinate out of range");
    for (const auto& c : r.v)
        if (c >= p_) fail("BadElement", "coordinate out of range");
    if (r.z >= p_) fail("BadElement", "coordinate out of range");
    return r;
}

HeisElement HeisenbergGroup::pow_closed_form(const Element& x, const mpz_class& a) const {
    HeisElement r;
    r.u.reserve(m_);
    r.v.reserve(m_);
    for (unsigned i = 0; i < m_; ++i) r.u.push_back(reduce(a * x.u[i]));
    for (unsigned i = 0; i < m_; ++i) r.v.push_back(reduce(a * x.v[i]));
    r.z = reduce(a * x.z + binom2(a) * dot(x.u, x.v));
    return r;
}

HeisElement HeisenbergGroup::commutator_closed_form(const Element& x, const Element& y) const {
    HeisElement r = identity();
    r.z = reduce(dot(x.u, y.v) - dot(y.u, x.v));
    return r;
}

bool HeisenbergGroup::is_central(const Element& x) const {
    for (const auto& c : x.u)
        if (c != 0) return false;
    for (const auto& c : x.v)
        if (c != 0) return false;
    return true;
}

HeisElement HeisenbergGroup::random_element(Rng& rng) const {
    HeisElement r;
    r.u.reserve(m_);
    r.v.reserve(m_);
    for (unsigned i = 0; i < m_; ++i) r.u.push_back(rng.below(p_));
    for (unsigned i = 0; i < m_; ++i) r.v.push_back(rng.below(p_));
    r.z = rng.below(p_);
    return r;
}

std::vector<HeisElement> HeisenbergGroup::standard_generators() const {
    std::vector<HeisElement> gens;
    gens.reserve(2 * m_);
    for (unsigned i = 0; i < m_; ++i) {
        HeisElement e = identity();
        e.u[i] = 1;
        gens.push_back(std::move(e));
    }
    for (unsigned i = 0; i < m_; ++i) {
        HeisElement e = identity();
        e.v[i] = 1;
        gens.push_back(std::move(e));
    }
    return gens;
}

bool HeisenbergGroup::key_base_ok(const Element& c) const {
    return is_central(c) && c.z != 0;
}

} // namespace nilnike
