#include "ring.hpp"

#include "errors.hpp"

namespace lzdg {

RingCtx make_quat_ring(uint64_t n) {
    require(n >= 2, "quaternion ring modulus must be >= 2");
    require(n <= 4096, "quaternion ring modulus too large for packing");
    return RingCtx{RingKind::QuatModN, n, 0, 0};
}

RingCtx make_mat_ring(uint64_t p, unsigned s) {
    require(p >= 2 && s >= 1, "matrix ring needs p >= 2, s >= 1");
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) {
        require(ps <= 4096 / p, "matrix ring modulus too large for packing");
        ps *= p;
    }
    Modulus mod = factorize(ps);
    require(mod.factors.size() == 1, "p must be prime");
    require(mod.factors[0].first == p, "p must be prime");
    return RingCtx{RingKind::MatModPs, ps, p, s};
}

uint64_t RingCtx::mul(uint64_t x, uint64_t y) const {
    if (kind == RingKind::QuatModN)
        return qpack(qmul(qunpack(x, n), qunpack(y, n), n), n);
    return mpack(mmul(munpack(x, n), munpack(y, n), n), n);
}

bool RingCtx::is_unit(uint64_t x) const {
    if (kind == RingKind::QuatModN)
        return q_is_unit(qunpack(x, n), n);
    return m_is_unit(munpack(x, n), n);
}

std::string RingCtx::elem_str(uint64_t x) const {
    if (kind == RingKind::QuatModN) return qstr(qunpack(x, n));
    return mstr(munpack(x, n));
}

std::array<uint64_t, 4> RingCtx::coeffs(uint64_t x) const {
    if (kind == RingKind::QuatModN) {
        Quat q = qunpack(x, n);
        return {q.a, q.b, q.c, q.d};
    }
    Mat2 m = munpack(x, n);
    return {m.e11, m.e12, m.e21, m.e22};
}

std::vector<uint64_t> zero_divisors(const RingCtx& ring) {
    std::vector<uint64_t> out;
    uint64_t total = ring.size();
    for (uint64_t x = 1; x < total; ++x)
        if (!ring.is_unit(x)) out.push_back(x);
    return out;
}

Annihilators annihilators(const RingCtx& ring, uint64_t x) {
    Annihilators out;
    uint64_t total = ring.size();
    for (uint64_t y = 0; y < total; ++y) {
        if (ring.mul(y, x) == 0) out.left.push_back(y);
        if (ring.mul(x, y) == 0) out.right.push_back(y);
    }
    return out;
}

uint64_t unit_count(const RingCtx& ring) {
    uint64_t total = ring.size();
    uint64_t count = 0;
    for (uint64_t x = 1; x < total; ++x)
        if (ring.is_unit(x)) ++count;
    return count;
}

} // namespace lzdg
