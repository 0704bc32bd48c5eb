#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modular.hpp"
#include "quaternion.hpp"

namespace lzdg {

// 2x2 matrix over Z_{p^s}, entries row-major (e11, e12, e21, e22)
struct Mat2 {
    uint64_t e11 = 0, e12 = 0, e21 = 0, e22 = 0;

    bool operator==(const Mat2&) const = default;
    bool is_zero() const { return e11 == 0 && e12 == 0 && e21 == 0 && e22 == 0; }
};

Mat2 mmul(const Mat2& x, const Mat2& y, uint64_t m);
Mat2 madd(const Mat2& x, const Mat2& y, uint64_t m);
Mat2 mscale(uint64_t t, const Mat2& x, uint64_t m);
uint64_t mdet(const Mat2& x, uint64_t m);
bool m_is_unit(const Mat2& x, uint64_t m);
Mat2 unit_matrix(uint64_t m); // identity

// E_mn basis matrix, 1-based indices
Mat2 basis_matrix(int row, int col, uint64_t m);

std::string mstr(const Mat2& x);

uint64_t mpack(const Mat2& x, uint64_t m);
Mat2 munpack(uint64_t idx, uint64_t m);

// the restricted vector family M^1: rows (1 a) with a arbitrary and
// (b 1) with b a non-unit (b = 0 mod p, zero allowed)
struct Vec2M1 {
    enum Kind : uint8_t { FirstUnit, SecondUnit } kind = FirstUnit;
    uint64_t free = 0;

    bool operator==(const Vec2M1&) const = default;
    // the actual row vector (v1, v2)
    uint64_t v1() const { return kind == FirstUnit ? 1 : free; }
    uint64_t v2() const { return kind == FirstUnit ? free : 1; }
};

// all p^s + p^{s-1} members, (1 a) ascending then (b 1) ascending
std::vector<Vec2M1> enumerate_m1(uint64_t p, unsigned s);

// the unique beta in M^1 with alpha . beta^t = 0, in closed form
Vec2M1 orthogonal_partner(const Vec2M1& alpha, uint64_t p, unsigned s);

// normalization of an arbitrary row vector with at least one unit entry:
// v = unit * m1 with m1 in M^1, unique
struct M1Normalization {
    uint64_t unit;
    Vec2M1 m1;
};
M1Normalization normalize_to_m1(uint64_t v1, uint64_t v2, uint64_t p,
                                unsigned s);

// Smith type (i, j): A is unit-equivalent to diag(p^i, p^j); j may be
// the Zero tag meaning the second diagonal entry vanishes mod p^s
struct SmithType {
    unsigned i = 0;
    bool j_is_zero = true;
    unsigned j = 0;

    bool operator==(const SmithType&) const = default;
};

SmithType smith_type(const Mat2& A, uint64_t p, unsigned s);

// canonical factorization A = u1 p^i alpha^t beta + u2 p^j E_mn of a
// nonzero zero divisor; the E-term sits at the position complementary
// to the pivot, which is the lexicographically smallest unit entry of
// A / p^i (row-major order)
struct CanonicalFactorization {
    uint64_t u1 = 1;
    unsigned i = 0;
    Vec2M1 alpha, beta;
    struct SecondTerm {
        uint64_t u2;
        unsigned j;
        int m, n; // 1-based position of the E-term
    };
    std::optional<SecondTerm> second;
};

CanonicalFactorization canonical_factorize(const Mat2& A, uint64_t p,
                                           unsigned s);

// reconstruction u1 p^i alpha^t beta (+ u2 p^j E_mn)
Mat2 reconstruct(const CanonicalFactorization& f, uint64_t p, unsigned s);

// explicit isomorphism Z_{p^s}[i,j,k] -> M2(Z_{p^s}) for odd p, built
// from a root of x^2 + y^2 = -1:
//   i -> [[x, y], [y, -x]], j -> [[0, 1], [-1, 0]], k = ij
struct QuatMatIso {
    uint64_t p = 0;
    unsigned s = 0;
    SumOfSquaresRoot root;
};

QuatMatIso make_iso(uint64_t p, unsigned s);
Mat2 quat_to_mat(const Quat& q, const QuatMatIso& iso);
Quat mat_to_quat(const Mat2& mt, const QuatMatIso& iso);

} // namespace lzdg
