#include "modular.hpp"

#include <numeric>

namespace lzdg {

uint64_t Modulus::prime_power(size_t k) const {
    uint64_t pw = 1;
    for (unsigned e = 0; e < factors[k].second; ++e) pw *= factors[k].first;
    return pw;
}

Modulus factorize(uint64_t n) {
    require(n >= 2, "factorize: n must be >= 2");
    Modulus m;
    m.n = n;
    uint64_t rest = n;
    for (uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (rest % p) continue;
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        m.factors.emplace_back(p, e);
    }
    if (rest > 1) m.factors.emplace_back(rest, 1);
    return m;
}

static void require_same_modulus(Residue a, Residue b) {
    require(a.n == b.n, "residue arithmetic across different moduli");
}

Residue res_add(Residue a, Residue b) {
    require_same_modulus(a, b);
    return Residue(add_mod(a.v, b.v, a.n), a.n);
}

Residue res_sub(Residue a, Residue b) {
    require_same_modulus(a, b);
    return Residue(sub_mod(a.v, b.v, a.n), a.n);
}

Residue res_mul(Residue a, Residue b) {
    require_same_modulus(a, b);
    return Residue(mul_mod(a.v, b.v, a.n), a.n);
}

bool is_unit(Residue r) { return gcd_u64(r.v, r.n) == 1; }

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t n) { return (a + b) % n; }

uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t n) {
    return (a + n - b % n) % n;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % n);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t n) {
    uint64_t r = 1 % n, b = base % n;
    while (exp) {
        if (exp & 1) r = mul_mod(r, b, n);
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t n) {
    a %= n;
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(n), newr = static_cast<int64_t>(a);
    while (newr != 0) {
        int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    require(r == 1, "inv_mod: argument is not a unit");
    if (t < 0) t += static_cast<int64_t>(n);
    return static_cast<uint64_t>(t);
}

unsigned valuation(uint64_t a, uint64_t p, unsigned s_clip) {
    if (a == 0) return s_clip;
    unsigned v = 0;
    while (v < s_clip && a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

std::vector<Residue> crt_split(Residue r, const Modulus& m) {
    require(r.n == m.n, "crt_split: residue modulus mismatch");
    require(!m.factors.empty(), "crt_split: modulus has no factors");
    std::vector<Residue> out;
    out.reserve(m.factors.size());
    for (size_t k = 0; k < m.factors.size(); ++k)
        out.emplace_back(r.v % m.prime_power(k), m.prime_power(k));
    return out;
}

Residue crt_join(const std::vector<Residue>& parts, const Modulus& m) {
    require(parts.size() == m.factors.size(),
            "crt_join: part count does not match factor count");
    uint64_t x = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
        uint64_t q = m.prime_power(k);
        require(parts[k].n == q, "crt_join: part modulus mismatch");
        uint64_t big = m.n / q; // coprime to q
        uint64_t coef = mul_mod(big % m.n, inv_mod(big % q, q), m.n);
        x = add_mod(x, mul_mod(parts[k].v, coef, m.n), m.n);
    }
    return Residue(x, m.n);
}

SumOfSquaresRoot lift_sum_of_squares(uint64_t p, unsigned s) {
    require(p % 2 == 1 && p > 1, "lift_sum_of_squares: p must be an odd prime");
    require(s >= 1, "lift_sum_of_squares: s must be >= 1");
    // smallest (x, y) mod p with x^2 + y^2 = -1
    uint64_t x = 0, y = 0;
    bool found = false;
    for (uint64_t xs = 0; xs < p && !found; ++xs)
        for (uint64_t ys = 0; ys < p; ++ys)
            if ((xs * xs + ys * ys + 1) % p == 0) {
                x = xs;
                y = ys;
                found = true;
                break;
            }
    check_internal(found, "no sum-of-squares root mod p");

    // lift one variable whose derivative 2*t is a unit mod p; since
    // x^2 + y^2 = -1, x and y cannot both be divisible by p
    uint64_t pw = p;
    for (unsigned k = 1; k < s; ++k) {
        uint64_t next = pw * p;
        uint64_t f = (mul_mod(x, x, next) + mul_mod(y, y, next) + 1) % next;
        check_internal(f % pw == 0, "Hensel step lost the congruence");
        uint64_t g = f / pw; // correction needed mod p
        if (x % p != 0) {
            uint64_t t = mul_mod(g, inv_mod((2 * x) % p, p), p);
            x = sub_mod(x, mul_mod(t % next, pw % next, next), next);
        } else {
            uint64_t t = mul_mod(g, inv_mod((2 * y) % p, p), p);
            y = sub_mod(y, mul_mod(t % next, pw % next, next), next);
        }
        pw = next;
    }
    check_internal((mul_mod(x, x, pw) + mul_mod(y, y, pw) + 1) % pw == 0,
                   "sum-of-squares lift failed");
    return SumOfSquaresRoot{x, y, pw};
}

} // namespace lzdg
