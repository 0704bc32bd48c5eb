#include "quaternion.hpp"

#include <algorithm>
#include <bit>

namespace lzdg {

Quat qmul(const Quat& x, const Quat& y, uint64_t n) {
    using i128 = __int128;
    i128 a = (i128)x.a * y.a - (i128)x.b * y.b - (i128)x.c * y.c - (i128)x.d * y.d;
    i128 b = (i128)x.a * y.b + (i128)x.b * y.a + (i128)x.c * y.d - (i128)x.d * y.c;
    i128 c = (i128)x.a * y.c + (i128)x.c * y.a + (i128)x.d * y.b - (i128)x.b * y.d;
    i128 d = (i128)x.a * y.d + (i128)x.d * y.a + (i128)x.b * y.c - (i128)x.c * y.b;
    auto red = [n](i128 v) {
        i128 m = v % (i128)n;
        if (m < 0) m += (i128)n;
        return (uint64_t)m;
    };
    return Quat{red(a), red(b), red(c), red(d)};
}

Quat qadd(const Quat& x, const Quat& y, uint64_t n) {
    return Quat{add_mod(x.a, y.a, n), add_mod(x.b, y.b, n),
                add_mod(x.c, y.c, n), add_mod(x.d, y.d, n)};
}

Quat qconj(const Quat& x, uint64_t n) {
    return Quat{x.a, sub_mod(0, x.b, n), sub_mod(0, x.c, n), sub_mod(0, x.d, n)};
}

Quat qscale(uint64_t t, const Quat& x, uint64_t n) {
    return Quat{mul_mod(t, x.a, n), mul_mod(t, x.b, n), mul_mod(t, x.c, n),
                mul_mod(t, x.d, n)};
}

uint64_t qnorm(const Quat& x, uint64_t n) {
    uint64_t r = mul_mod(x.a, x.a, n);
    r = add_mod(r, mul_mod(x.b, x.b, n), n);
    r = add_mod(r, mul_mod(x.c, x.c, n), n);
    r = add_mod(r, mul_mod(x.d, x.d, n), n);
    return r;
}

bool q_is_unit(const Quat& x, uint64_t n) {
    return gcd_u64(qnorm(x, n), n) == 1;
}

std::string qstr(const Quat& x) {
    std::string s = std::to_string(x.a);
    s += "+" + std::to_string(x.b) + "i";
    s += "+" + std::to_string(x.c) + "j";
    s += "+" + std::to_string(x.d) + "k";
    return s;
}

uint64_t qpack(const Quat& x, uint64_t n) {
    return ((x.a * n + x.b) * n + x.c) * n + x.d;
}

Quat qunpack(uint64_t idx, uint64_t n) {
    Quat q;
    q.d = idx % n;
    idx /= n;
    q.c = idx % n;
    idx /= n;
    q.b = idx % n;
    q.a = idx / n;
    return q;
}

std::vector<Quat> crt_split_quat(const Quat& x, const Modulus& m) {
    std::vector<Quat> out;
    out.reserve(m.factors.size());
    for (size_t k = 0; k < m.factors.size(); ++k) {
        uint64_t q = m.prime_power(k);
        out.push_back(Quat{x.a % q, x.b % q, x.c % q, x.d % q});
    }
    return out;
}

Quat crt_join_quat(const std::vector<Quat>& parts, const Modulus& m) {
    require(parts.size() == m.factors.size(),
            "crt_join_quat: part count mismatch");
    auto join_coef = [&](auto get) {
        std::vector<Residue> rs;
        for (size_t k = 0; k < parts.size(); ++k)
            rs.emplace_back(get(parts[k]), m.prime_power(k));
        return crt_join(rs, m).v;
    };
    return Quat{join_coef([](const Quat& q) { return q.a; }),
                join_coef([](const Quat& q) { return q.b; }),
                join_coef([](const Quat& q) { return q.c; }),
                join_coef([](const Quat& q) { return q.d; })};
}

Quat pi_element(PiTag t, uint64_t n) {
    switch (t) {
    case PiTag::One: return Quat{1 % n, 0, 0, 0};
    case PiTag::I1: return Quat{1 % n, 1 % n, 0, 0};
    case PiTag::J1: return Quat{1 % n, 0, 1 % n, 0};
    case PiTag::K1: return Quat{1 % n, 0, 0, 1 % n};
    case PiTag::DP: return Quat{1 % n, 1 % n, 1 % n, 1 % n};
    case PiTag::DM: return Quat{1 % n, 1 % n, 1 % n, (n - 1) % n};
    }
    throw internal_error("pi_element: bad tag");
}

const char* pi_name(PiTag t) {
    switch (t) {
    case PiTag::One: return "1";
    case PiTag::I1: return "1+i";
    case PiTag::J1: return "1+j";
    case PiTag::K1: return "1+k";
    case PiTag::DP: return "1+i+j+k";
    case PiTag::DM: return "1+i+j-k";
    }
    throw internal_error("pi_name: bad tag");
}

namespace {

// left multiplication by q as a 4x4 matrix over Z_{2^s}, acting on
// column vectors (e, f, g, h) listed in the 1, i, j, k basis
std::array<std::array<uint64_t, 4>, 4> left_mul_matrix(const Quat& q,
                                                       uint64_t n) {
    auto neg = [n](uint64_t v) { return sub_mod(0, v, n); };
    return {{{q.a, neg(q.b), neg(q.c), neg(q.d)},
             {q.b, q.a, neg(q.d), q.c},
             {q.c, q.d, q.a, neg(q.b)},
             {q.d, neg(q.c), q.b, q.a}}};
}

unsigned v2(uint64_t x, unsigned cap) {
    if (x == 0) return cap;
    unsigned v = (unsigned)std::countr_zero(x);
    return v < cap ? v : cap;
}

// outcome of the diagonalization U * M * V = diag(2^e0..2^e3) over
// Z_{2^s}, with x transformed alongside by the row operations
struct DiagSolve {
    unsigned s;
    uint64_t mask;
    std::array<unsigned, 4> e;            // diagonal exponents, clipped to s
    std::array<uint64_t, 4> xr;           // row-transformed right side
    std::array<std::array<uint64_t, 4>, 4> V; // column operations
};

DiagSolve diagonalize(std::array<std::array<uint64_t, 4>, 4> M,
                      std::array<uint64_t, 4> x, unsigned s) {
    DiagSolve out;
    out.s = s;
    out.mask = (s >= 64) ? ~0ull : ((1ull << s) - 1);
    const uint64_t mask = out.mask;
    std::array<std::array<uint64_t, 4>, 4> V{};
    for (int i = 0; i < 4; ++i) V[i][i] = 1;

    for (int t = 0; t < 4; ++t) {
        // pivot: minimal 2-adic valuation in the remaining block,
        // ties by smallest (row, column)
        int pr = -1, pc = -1;
        unsigned pe = s + 1;
        for (int r = t; r < 4; ++r)
            for (int c = t; c < 4; ++c) {
                unsigned e = v2(M[r][c], s);
                if (e < pe) {
                    pe = e;
                    pr = r;
                    pc = c;
                }
            }
        if (pe >= s) {
            for (int r = t; r < 4; ++r) out.e[r] = s;
            break;
        }
        if (pr != t) {
            std::swap(M[pr], M[t]);
            std::swap(x[pr], x[t]);
        }
        if (pc != t)
            for (int r = 0; r < 4; ++r) {
                std::swap(M[r][pc], M[r][t]);
                std::swap(V[r][pc], V[r][t]);
            }
        // scale the pivot row so the pivot becomes exactly 2^pe
        uint64_t inv = inv_mod((M[t][t] >> pe) & mask, mask + 1);
        for (int c = t; c < 4; ++c) M[t][c] = (M[t][c] * inv) & mask;
        x[t] = (x[t] * inv) & mask;
        // clear the pivot column with row operations
        for (int r = 0; r < 4; ++r) {
            if (r == t || M[r][t] == 0) continue;
            uint64_t f = (M[r][t] >> pe) & mask;
            for (int c = t; c < 4; ++c)
                M[r][c] = (M[r][c] - f * M[t][c]) & mask;
            x[r] = (x[r] - f * x[t]) & mask;
        }
        // clear the pivot row with column operations, tracked in V
        for (int c = 0; c < 4; ++c) {
            if (c == t || M[t][c] == 0) continue;
            uint64_t f = (M[t][c] >> pe) & mask;
            for (int r = 0; r < 4; ++r) {
                M[r][c] = (M[r][c] - f * M[r][t]) & mask;
                V[r][c] = (V[r][c] - f * V[r][t]) & mask;
            }
        }
        out.e[t] = pe;
    }
    out.xr = x;
    out.V = V;
    return out;
}

std::array<uint64_t, 4> apply_V(const DiagSolve& d,
                                const std::array<uint64_t, 4>& y) {
    std::array<uint64_t, 4> z{};
    for (int r = 0; r < 4; ++r) {
        uint64_t acc = 0;
        for (int c = 0; c < 4; ++c) acc += d.V[r][c] * y[c];
        z[r] = acc & d.mask;
    }
    return z;
}

// coordinate-sum parity: a quaternion over Z_{2^s} is a unit iff its
// norm is odd iff a+b+c+d is odd
unsigned sigma(const std::array<uint64_t, 4>& z) {
    return (unsigned)((z[0] + z[1] + z[2] + z[3]) & 1);
}

// solve M z = x over Z_{2^s} for a unit z; returns true and the smallest
// canonical choice if one exists
bool solve_for_unit(const Quat& pi_times_2l, const Quat& x, unsigned s,
                    Quat* out) {
    uint64_t n = 1ull << s;
    DiagSolve d = diagonalize(left_mul_matrix(pi_times_2l, n),
                              {x.a, x.b, x.c, x.d}, s);
    // particular solution of diag(2^e) y = xr, free parts set to zero
    std::array<uint64_t, 4> y{};
    for (int i = 0; i < 4; ++i) {
        if (d.e[i] >= s) {
            if (d.xr[i] != 0) return false;
            y[i] = 0;
        } else {
            if (v2(d.xr[i], s) < d.e[i]) return false;
            y[i] = (d.xr[i] >> d.e[i]) & d.mask;
        }
    }
    std::array<uint64_t, 4> z = apply_V(d, y);
    if (sigma(z)) {
        if (out) *out = Quat{z[0], z[1], z[2], z[3]};
        return true;
    }
    // kernel generator with odd coordinate sum flips the parity
    for (int i = 0; i < 4; ++i) {
        if (d.e[i] == 0) continue;
        std::array<uint64_t, 4> gy{};
        gy[i] = (d.e[i] >= s) ? 1 : (1ull << (s - d.e[i]));
        std::array<uint64_t, 4> g = apply_V(d, gy);
        if (sigma(g)) {
            for (int r = 0; r < 4; ++r) z[r] = (z[r] + g[r]) & d.mask;
            if (out) *out = Quat{z[0], z[1], z[2], z[3]};
            return true;
        }
    }
    return false;
}

} // namespace

QuatFactorization factorize_2adic(const Quat& x, unsigned s) {
    require(s >= 1 && s <= 20, "factorize_2adic: s out of range");
    require(!x.is_zero(), "factorize_2adic: x must be nonzero");
    uint64_t n = 1ull << s;
    require(x.a < n && x.b < n && x.c < n && x.d < n,
            "factorize_2adic: coefficients exceed modulus");
    for (unsigned l = 0; l < s; ++l)
        for (int t = 0; t < kPiCount; ++t) {
            PiTag tag = (PiTag)t;
            Quat m = qscale(1ull << l, pi_element(tag, n), n);
            Quat alpha0;
            if (solve_for_unit(m, x, s, &alpha0)) {
                check_internal(qmul(m, alpha0, n) == x,
                               "factorize_2adic: reconstruction failed");
                return QuatFactorization{l, tag, alpha0};
            }
        }
    throw internal_error("factorize_2adic: no factorization found");
}

std::vector<std::pair<unsigned, PiTag>> factorization_candidates(const Quat& x,
                                                                 unsigned s) {
    require(!x.is_zero(), "factorization_candidates: x must be nonzero");
    uint64_t n = 1ull << s;
    std::vector<std::pair<unsigned, PiTag>> out;
    for (unsigned l = 0; l < s; ++l)
        for (int t = 0; t < kPiCount; ++t) {
            PiTag tag = (PiTag)t;
            Quat m = qscale(1ull << l, pi_element(tag, n), n);
            if (solve_for_unit(m, x, s, nullptr)) out.emplace_back(l, tag);
        }
    return out;
}

uint64_t unit_count_2adic(unsigned s) { return 1ull << (4 * s - 1); }

EquivClasses equivalence_classes(unsigned s, uint64_t element_cap) {
    require(s >= 1, "equivalence_classes: s must be >= 1");
    uint64_t n = 1ull << s;
    uint64_t total = n * n * n * n;
    if (total > element_cap)
        throw resource_limit(
            "equivalence_classes: ring exceeds the element cap; use the "
            "class-level pipeline");

    EquivClasses out;
    out.s = s;
    out.n = n;
    out.class_of.assign(total, UINT32_MAX);

    // class ids in the canonical (l, pi) order, unit class appended last
    std::vector<int32_t> id_of_pair(6 * s, -1);
    auto pair_key = [s](unsigned l, PiTag pi) {
        return l * 6 + (unsigned)pi;
    };
    for (unsigned l = 0; l < s; ++l)
        for (int t = 0; t < kPiCount; ++t) {
            PiTag tag = (PiTag)t;
            if (l == 0 && tag == PiTag::One) continue; // unit class, added last
            if (s >= 2 && l == s - 1 && tag == PiTag::DM)
                continue; // identified with DP at the top level
            if (s == 1 && tag == PiTag::DM) continue; // coincides with DP mod 2
            EquivClass c;
            c.l = l;
            c.pi = tag;
            c.merged_top = (l == s - 1 && tag == PiTag::DP);
            id_of_pair[pair_key(l, tag)] = (int32_t)out.classes.size();
            out.classes.push_back(c);
        }
    EquivClass uc;
    uc.unit_class = true;
    uint32_t unit_id = (uint32_t)out.classes.size();
    out.classes.push_back(uc);

    // ascending idx means the first member seen per class is the
    // lexicographically smallest one
    for (uint64_t idx = 1; idx < total; ++idx) {
        Quat x = qunpack(idx, n);
        uint32_t cid;
        if (q_is_unit(x, n)) {
            cid = unit_id;
        } else {
            QuatFactorization f = factorize_2adic(x, s);
            PiTag tag = f.pi;
            if (s >= 2 && f.l == s - 1 && tag == PiTag::DM) tag = PiTag::DP;
            int32_t id = id_of_pair[pair_key(f.l, tag)];
            check_internal(id >= 0, "factorization hit an unregistered class");
            cid = (uint32_t)id;
        }
        out.class_of[idx] = cid;
        EquivClass& c = out.classes[cid];
        c.size += 1;
        if (c.size == 1) c.rep = x;
    }
    check_internal(out.classes[unit_id].size == unit_count_2adic(s),
                   "unit class size is not 2^(4s-1)");
    return out;
}

uint64_t sim_class_size(unsigned s, unsigned l, PiTag pi) {
    require(s >= 1 && s <= 15, "sim_class_size: s out of range");
    require(l < s, "sim_class_size: l out of range");
    uint64_t n = 1ull << s;
    Quat m = qscale(1ull << l, pi_element(pi, n), n);
    require(!m.is_zero(), "sim_class_size: zero representative");
    DiagSolve d = diagonalize(left_mul_matrix(m, n), {0, 0, 0, 0}, s);
    // kernel size and the parity of the coordinate-sum functional on it
    unsigned ker_bits = 0;
    bool sigma_odd_on_kernel = false;
    for (int i = 0; i < 4; ++i) {
        ker_bits += d.e[i];
        if (d.e[i] == 0) continue;
        std::array<uint64_t, 4> gy{};
        gy[i] = (d.e[i] >= s) ? 1 : (1ull << (s - d.e[i]));
        if (sigma(apply_V(d, gy))) sigma_odd_on_kernel = true;
    }
    uint64_t kernel = 1ull << ker_bits;
    uint64_t even_sigma = sigma_odd_on_kernel ? kernel / 2 : kernel;
    check_internal(unit_count_2adic(s) % even_sigma == 0,
                   "sim_class_size: stabilizer does not divide the unit count");
    return unit_count_2adic(s) / even_sigma;
}

} // namespace lzdg
