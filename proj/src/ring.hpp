#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mat2.hpp"
#include "modular.hpp"
#include "quaternion.hpp"

namespace lzdg {

enum class RingKind { QuatModN, MatModPs };

// uniform handle on the two ring families; elements travel as packed
// indices in [0, size), zero packing to index 0 in both families
struct RingCtx {
    RingKind kind;
    uint64_t n = 0; // modulus: n for quaternions, p^s for matrices
    uint64_t p = 0; // matrix family only
    unsigned s = 0; // matrix family only

    uint64_t size() const { return n * n * n * n; }

    uint64_t mul(uint64_t x, uint64_t y) const;
    bool is_unit(uint64_t x) const;
    bool is_zero_divisor(uint64_t x) const {
        return x != 0 && !is_unit(x);
    }
    std::string elem_str(uint64_t x) const;
    // the four coefficients in packing order
    std::array<uint64_t, 4> coeffs(uint64_t x) const;
};

RingCtx make_quat_ring(uint64_t n);
RingCtx make_mat_ring(uint64_t p, unsigned s);

// ascending packed indices of all nonzero zero divisors
std::vector<uint64_t> zero_divisors(const RingCtx& ring);

// full-ring left and right annihilators of x, ascending packed indices
struct Annihilators {
    std::vector<uint64_t> left;  // y with yx = 0
    std::vector<uint64_t> right; // y with xy = 0
};
Annihilators annihilators(const RingCtx& ring, uint64_t x);

uint64_t unit_count(const RingCtx& ring);

} // namespace lzdg
