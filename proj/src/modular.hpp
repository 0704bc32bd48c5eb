#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lzdg {

// modulus n >= 2 with its prime factorization, primes ascending
struct Modulus {
    uint64_t n = 0;
    std::vector<std::pair<uint64_t, unsigned>> factors;

    // value of factor k as a prime power
    uint64_t prime_power(size_t k) const;
};

Modulus factorize(uint64_t n);

// residue carrying its modulus; cross-modulus arithmetic is rejected
struct Residue {
    uint64_t v = 0;
    uint64_t n = 0;

    Residue() = default;
    Residue(uint64_t value, uint64_t modulus) : v(value % modulus), n(modulus) {
        require(modulus >= 2, "modulus must be >= 2");
    }
};

Residue res_add(Residue a, Residue b);
Residue res_sub(Residue a, Residue b);
Residue res_mul(Residue a, Residue b);
bool is_unit(Residue r);

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t add_mod(uint64_t a, uint64_t b, uint64_t n);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t n);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t n);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t n);

// inverse of a unit; throws invalid_input if gcd(a, n) != 1
uint64_t inv_mod(uint64_t a, uint64_t n);

// p-adic valuation of a in [0, p^s); returns s_clip for a == 0
unsigned valuation(uint64_t a, uint64_t p, unsigned s_clip);

// componentwise reduction of r modulo each prime-power factor
std::vector<Residue> crt_split(Residue r, const Modulus& m);

// inverse of crt_split; parts must match the factor moduli in order
Residue crt_join(const std::vector<Residue>& parts, const Modulus& m);

// (x, y) with x^2 + y^2 = -1 mod p^s for odd prime p, deterministic:
// lexicographically smallest base solution mod p, then Hensel lifting
struct SumOfSquaresRoot {
    uint64_t x = 0, y = 0;
    uint64_t pw = 0; // p^s
};

SumOfSquaresRoot lift_sum_of_squares(uint64_t p, unsigned s);

} // namespace lzdg
