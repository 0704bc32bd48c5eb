#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "modular.hpp"

namespace lzdg {

// element of Z_n[i,j,k]; coefficients of 1, i, j, k, reduced mod n
struct Quat {
    uint64_t a = 0, b = 0, c = 0, d = 0;

    bool operator==(const Quat&) const = default;
    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
};

Quat qmul(const Quat& x, const Quat& y, uint64_t n);
Quat qadd(const Quat& x, const Quat& y, uint64_t n);
Quat qconj(const Quat& x, uint64_t n);
Quat qscale(uint64_t t, const Quat& x, uint64_t n);
uint64_t qnorm(const Quat& x, uint64_t n);

// unit criterion: gcd(norm, n) == 1; equivalent to having a two-sided
// inverse since x * conj(x) = N(x) is central
bool q_is_unit(const Quat& x, uint64_t n);

std::string qstr(const Quat& x);

// element <-> dense index, lexicographic in (a, b, c, d)
uint64_t qpack(const Quat& x, uint64_t n);
Quat qunpack(uint64_t idx, uint64_t n);

// coefficientwise CRT split/join
std::vector<Quat> crt_split_quat(const Quat& x, const Modulus& m);
Quat crt_join_quat(const std::vector<Quat>& parts, const Modulus& m);

// the six pi factors of the 2-adic factorization, in the fixed order
// 1, 1+i, 1+j, 1+k, (1+i)(1+j) = 1+i+j+k, (1+i)(1-k) = 1+i+j-k
enum class PiTag : uint8_t { One = 0, I1, J1, K1, DP, DM };
constexpr int kPiCount = 6;

Quat pi_element(PiTag t, uint64_t n);
const char* pi_name(PiTag t); // "1", "1+i", ..., "1+i+j+k", "1+i+j-k"

struct QuatFactorization {
    unsigned l = 0;
    PiTag pi = PiTag::One;
    Quat alpha0; // a unit
};

// unique factorization x = 2^l * pi * alpha0 over Z_{2^s}: smallest l,
// then first pi in the fixed order, admitting a unit solution alpha0.
// The single top-level identification 2^{s-1}(1+i+j+k) = 2^{s-1}(1+i+j-k)
// makes DP the canonical tag for that one element.
QuatFactorization factorize_2adic(const Quat& x, unsigned s);

// all (l, pi) pairs that admit a unit solution; used by the uniqueness check
std::vector<std::pair<unsigned, PiTag>> factorization_candidates(const Quat& x,
                                                                 unsigned s);

// equivalence classes [x] = xU of the nonzero elements of Z_{2^s}[i,j,k],
// computed elementwise through factorization fibers
struct EquivClass {
    unsigned l = 0;
    PiTag pi = PiTag::One;   // canonical tag (DP for the merged top class)
    bool merged_top = false; // true for [2^{s-1}(1+i+j+k)] when s >= 2
    bool unit_class = false;
    Quat rep;                // lexicographically smallest member
    uint64_t size = 0;
};

struct EquivClasses {
    unsigned s = 0;
    uint64_t n = 0;
    std::vector<EquivClass> classes;     // unit class last, zero divisors first
    std::vector<uint32_t> class_of;      // indexed by qpack; class id; zero element maps to UINT32_MAX
};

// enumerates the ring; element_cap bounds 2^{4s}
EquivClasses equivalence_classes(unsigned s, uint64_t element_cap = 1000000);

// class size |2^l * pi * U| mod 2^s computed structurally from the kernel
// of the left multiplication matrix, without enumerating the ring
uint64_t sim_class_size(unsigned s, unsigned l, PiTag pi);

// number of units of Z_{2^s}[i,j,k]: 2^{4s-1}
uint64_t unit_count_2adic(unsigned s);

} // namespace lzdg
