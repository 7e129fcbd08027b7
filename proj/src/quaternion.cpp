#include "nilnike/quaternion.hpp"

#include <algorithm>

#include "nilnike/encoding.hpp"
#include "nilnike/errors.hpp"

namespace nilnike {

QuatAlgebra::QuatAlgebra(mpz_class p, mpz_class t, unsigned precision)
    : p_(std::move(p)), t_(std::move(t)), n_(precision) {
    if (n_ < 1) fail("BadConfig", "quaternion algebra needs precision >= 1");
    if (p_ <= 3) fail("BadConfig", "quaternion algebra needs p > 3");
    if (!is_probable_prime(p_)) fail("BadConfig", "p is not prime");
    if (is_quadratic_residue(t_ % p_, p_)) fail("BadConfig", "t must be a nonresidue mod p");
    q_ = pow_ui(p_, n_);
    // Cross-term signs in basis order: t*b1b2, p*c1c2, tp*d1d2 (scalar part);
    // p*c1d2, p*d1c2 (i part); t*b1d2, t*d1b2 (j part); b1c2, c1b2 (k part).
    signs_ = {+1, +1, -1, -1, +1, +1, -1, +1, -1};
    if (!check_defining_relations())
        fail("BadConfig", "quaternion structure constants violate the defining relations");
}

mpz_class QuatAlgebra::reduce(const mpz_class& x) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), q_.get_mpz_t());
    return r;
}

Quaternion QuatAlgebra::make(mpz_class a, mpz_class b, mpz_class c, mpz_class d) const {
    return Quaternion{reduce(a), reduce(b), reduce(c), reduce(d)};
}

Quaternion QuatAlgebra::mul(const Quaternion& x, const Quaternion& y) const {
    Quaternion r;
    r.a = reduce(x.a * y.a + signs_[0] * t_ * x.b * y.b + signs_[1] * p_ * x.c * y.c +
                 signs_[2] * t_ * p_ * x.d * y.d);
    r.b = reduce(x.a * y.b + x.b * y.a + signs_[3] * p_ * x.c * y.d + signs_[4] * p_ * x.d * y.c);
    r.c = reduce(x.a * y.c + x.c * y.a + signs_[5] * t_ * x.b * y.d + signs_[6] * t_ * x.d * y.b);
    r.d = reduce(x.a * y.d + x.d * y.a + signs_[7] * x.b * y.c + signs_[8] * x.c * y.b);
    return r;
}

Quaternion QuatAlgebra::sub(const Quaternion& x, const Quaternion& y) const {
    return Quaternion{reduce(x.a - y.a), reduce(x.b - y.b), reduce(x.c - y.c),
                      reduce(x.d - y.d)};
}

Quaternion QuatAlgebra::conj(const Quaternion& x) const {
    return Quaternion{x.a, reduce(-x.b), reduce(-x.c), reduce(-x.d)};
}

mpz_class QuatAlgebra::norm(const Quaternion& x) const {
    return reduce(x.a * x.a - t_ * x.b * x.b - p_ * x.c * x.c + t_ * p_ * x.d * x.d);
}

bool QuatAlgebra::equal(const Quaternion& x, const Quaternion& y) const {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

Valuation QuatAlgebra::m_valuation(const Quaternion& x) const {
    if (x.a == 0 && x.b == 0 && x.c == 0 && x.d == 0) return Valuation{false, 0};
    auto coord_val = [&](const mpz_class& v) -> unsigned long {
        if (v == 0) return n_;  // zero residue: only v_p >= N is known
        return v_p(v, p_).order;
    };
    unsigned long val = std::min(
        std::min(2 * coord_val(x.a), 2 * coord_val(x.b)),
        std::min(2 * coord_val(x.c) + 1, 2 * coord_val(x.d) + 1));
    const unsigned long cap = 2UL * n_ - 1;
    return Valuation{true, std::min(val, cap)};
}

Quaternion QuatAlgebra::reduce_mod_layer(const Quaternion& x, unsigned layer) const {
    if (layer > 2 * n_) fail("BadConfig", "layer exceeds the representable filtration range");
    const mpz_class mh = pow_ui(p_, (layer + 1) / 2);
    const mpz_class ml = pow_ui(p_, layer / 2);
    auto red = [](const mpz_class& v, const mpz_class& mod) {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
        return r;
    };
    return Quaternion{red(x.a, mh), red(x.b, mh), red(x.c, ml), red(x.d, ml)};
}

bool QuatAlgebra::congruent_mod_layer(const Quaternion& x, const Quaternion& y,
                                      unsigned layer) const {
    return m_valuation(sub(x, y)).at_least(layer);
}

bool QuatAlgebra::check_defining_relations() const {
    const Quaternion i{0, 1, 0, 0};
    const Quaternion j{0, 0, 1, 0};
    const Quaternion k{0, 0, 0, 1};
    const Quaternion ij = mul(i, j);
    const Quaternion ji = mul(j, i);
    if (!equal(mul(i, i), make(t_, 0, 0, 0))) return false;
    if (!equal(mul(j, j), make(p_, 0, 0, 0))) return false;
    if (!equal(ij, k)) return false;
    if (!equal(ji, make(0, 0, 0, -1))) return false;
    if (!equal(mul(k, k), make(-t_ * p_, 0, 0, 0))) return false;
    // induced relations
    if (!equal(mul(i, k), make(0, 0, t_, 0))) return false;
    if (!equal(mul(k, i), make(0, 0, -t_, 0))) return false;
    if (!equal(mul(j, k), make(0, -p_, 0, 0))) return false;
    if (!equal(mul(k, j), make(0, p_, 0, 0))) return false;
    // associativity spot check on mixed basis products
    const Quaternion x = make(1, 2, 3, 4);
    const Quaternion y = make(5, 6, 7, 8);
    const Quaternion z = make(9, 1, 2, 3);
    if (!equal(mul(mul(x, y), z), mul(x, mul(y, z)))) return false;
    return true;
}

unsigned precision_for(unsigned n, unsigned alpha) {
    if (n < 1 || alpha < 1) fail("BadConfig", "precision_for needs n >= 1, alpha >= 1");
    const unsigned i0 = 2 * alpha - 1;
    const unsigned top = (n + 1) * i0 + 1;
    return (top + 1) / 2 + 2;
}

QuaternionGroup::QuaternionGroup(mpz_class p, unsigned alpha, unsigned n,
                                 std::optional<mpz_class> t,
                                 std::optional<unsigned> precision)
    : params_{std::move(p),
              mpz_class(0),
              0,
              alpha,
              n,
              2 * alpha - 1},
      alg_(params_.p, t ? *t : find_qnr(params_.p),
           precision ? *precision : precision_for(n, alpha)),
      key_layer_((n + 1) * (2 * alpha - 1)) {
    if (alpha < 1) fail("BadConfig", "quaternion platform needs alpha >= 1");
    if (n < 1) fail("BadConfig", "quaternion platform needs n >= 1");
    params_.t = alg_.t();
    params_.precision = alg_.precision();
    if (params_.precision < precision_for(n, alpha))
        fail("BadConfig", "precision too small for the requested class and alpha");
}

std::vector<std::uint8_t> QuaternionGroup::serialize(const Element& x) const {
    const Quaternion r = alg_.reduce_mod_layer(x, key_layer_);
    const std::size_t w = coord_width(alg_.modulus());
    std::vector<std::uint8_t> out;
    out.reserve(1 + 4 * w);
    out.push_back(kTag);
    append_coord(out, r.a, w);
    append_coord(out, r.b, w);
    append_coord(out, r.c, w);
    append_coord(out, r.d, w);
    return out;
}

Quaternion QuaternionGroup::deserialize(std::span<const std::uint8_t> bytes) const {
    const std::size_t w = coord_width(alg_.modulus());
    if (bytes.size() != 1 + 4 * w || bytes[0] != kTag)
        fail("BadElement", "malformed quaternion element encoding");
    auto body = bytes.subspan(1);
    Quaternion r{read_coord(body, 0, w), read_coord(body, 1, w), read_coord(body, 2, w),
                 read_coord(body, 3, w)};
    const mpz_class mh = pow_ui(params_.p, (key_layer_ + 1) / 2);
    const mpz_class ml = pow_ui(params_.p, key_layer_ / 2);
    if (r.a >= mh || r.b >= mh || r.c >= ml || r.d >= ml)
        fail("BadElement", "coordinate not layer-canonical");
    if (r.a % params_.p != 1) fail("BadElement", "element does not lie in 1 + m");
    return r;
}

SL1Element QuaternionGroup::sl1_from_bcd(const mpz_class& b, const mpz_class& c,
                                         const mpz_class& d) const {
    if (b % params_.p != 0) fail("BadElement", "b must be divisible by p for 1 + m membership");
    const mpz_class s =
        1 + params_.t * b * b + params_.p * c * c - params_.t * params_.p * d * d;
    const mpz_class a = hensel_sqrt(s, 1, params_.p, params_.precision);
    Quaternion q = alg_.make(a, b, c, d);
    if (alg_.norm(q) != 1) fail("BadElement", "construction did not produce a norm-one element");
    return SL1Element{q, exact_level(q)};
}

unsigned QuaternionGroup::exact_level(const Quaternion& q) const {
    const Valuation v = alg_.m_valuation(alg_.sub(q, alg_.one()));
    if (!v.finite) return 2 * params_.precision - 1;
    return static_cast<unsigned>(v.order);
}

SL1Element QuaternionGroup::sample_s_element(unsigned level, Rng& rng) const {
    const unsigned N = params_.precision;
    if (level < 1 || level > 2 * N - 3)
        fail("BadConfig", "sampling level must satisfy 1 <= level <= 2N - 3");
    // Valuation floors that put b i + c j + d k into m^level.
    const unsigned vb = (level + 1) / 2;
    const unsigned vcd = level / 2;
    const mpz_class pb = pow_ui(params_.p, vb);
    const mpz_class pcd = pow_ui(params_.p, vcd);
    const mpz_class rb = pow_ui(params_.p, N - vb);
    const mpz_class rcd = pow_ui(params_.p, N - vcd);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const mpz_class b = pb * rng.below(rb);
        const mpz_class c = pcd * rng.below(rcd);
        const mpz_class d = pcd * rng.below(rcd);
        SL1Element x = sl1_from_bcd(b, c, d);
        if (x.level == level) return x;
    }
    fail("SamplingFailed", "could not hit the requested valuation level in 64 attempts");
}

SL1Element QuaternionGroup::sl1_mul(const SL1Element& x, const SL1Element& y) const {
    return SL1Element{alg_.mul(x.q, y.q), std::min(x.level, y.level)};
}

SL1Element QuaternionGroup::sl1_inv(const SL1Element& x) const {
    if (alg_.norm(x.q) != 1) fail("NotNormOne", "inverse-by-conjugation needs norm 1");
    return SL1Element{alg_.conj(x.q), x.level};
}

SL1Element QuaternionGroup::sl1_pow(const SL1Element& x, const mpz_class& e) const {
    if (e < 0) return sl1_pow(sl1_inv(x), mpz_class(-e));
    SL1Element r{alg_.one(), 2 * params_.precision - 1};
    if (e == 0) return r;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    r = x;
    for (std::size_t i = bits - 1; i-- > 0;) {
        r = sl1_mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = sl1_mul(r, x);
    }
    r.level = x.level;
    return r;
}

SL1Element QuaternionGroup::sl1_commutator(const SL1Element& x, const SL1Element& y) const {
    SL1Element r = sl1_mul(sl1_mul(sl1_mul(x, y), sl1_inv(x)), sl1_inv(y));
    r.level = std::min(2 * params_.precision - 1, x.level + y.level);
    return r;
}

Quaternion QuaternionGroup::pow_layer_formula(const SL1Element& x, const mpz_class& m,
                                              unsigned k) const {
    if (k < 1) fail("BadConfig", "layer index must be >= 1");
    const unsigned needed = k * params_.i0;
    if (exact_level(x.q) < needed)
        fail("LevelTooLow", "element valuation below k * i0");
    const unsigned layer = (k + 1) * params_.i0;
    const mpz_class mh = pow_ui(params_.p, (layer + 1) / 2);
    const mpz_class ml = pow_ui(params_.p, layer / 2);
    mpz_class am;
    mpz_powm(am.get_mpz_t(), x.q.a.get_mpz_t(), m.get_mpz_t(), mh.get_mpz_t());
    auto red = [](const mpz_class& v, const mpz_class& mod) {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
        return r;
    };
    return Quaternion{am, red(m * x.q.b, mh), red(m * x.q.c, ml), red(m * x.q.d, ml)};
}

bool QuaternionGroup::key_base_ok(const Element& c) const {
    return exact_level(c) == params_.n * params_.i0;
}

} // namespace nilnike
