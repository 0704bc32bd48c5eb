#include "mat2.hpp"

#include <sstream>

#include "errors.hpp"

namespace lzdg {

Mat2 mmul(const Mat2& x, const Mat2& y, uint64_t m) {
    return Mat2{
        add_mod(mul_mod(x.e11, y.e11, m), mul_mod(x.e12, y.e21, m), m),
        add_mod(mul_mod(x.e11, y.e12, m), mul_mod(x.e12, y.e22, m), m),
        add_mod(mul_mod(x.e21, y.e11, m), mul_mod(x.e22, y.e21, m), m),
        add_mod(mul_mod(x.e21, y.e12, m), mul_mod(x.e22, y.e22, m), m),
    };
}

Mat2 madd(const Mat2& x, const Mat2& y, uint64_t m) {
    return Mat2{add_mod(x.e11, y.e11, m), add_mod(x.e12, y.e12, m),
                add_mod(x.e21, y.e21, m), add_mod(x.e22, y.e22, m)};
}

Mat2 mscale(uint64_t t, const Mat2& x, uint64_t m) {
    return Mat2{mul_mod(t, x.e11, m), mul_mod(t, x.e12, m),
                mul_mod(t, x.e21, m), mul_mod(t, x.e22, m)};
}

uint64_t mdet(const Mat2& x, uint64_t m) {
    return sub_mod(mul_mod(x.e11, x.e22, m), mul_mod(x.e12, x.e21, m), m);
}

bool m_is_unit(const Mat2& x, uint64_t m) {
    return gcd_u64(mdet(x, m), m) == 1;
}

Mat2 unit_matrix(uint64_t) { return Mat2{1, 0, 0, 1}; }

Mat2 basis_matrix(int row, int col, uint64_t) {
    require(row >= 1 && row <= 2 && col >= 1 && col <= 2,
            "basis_matrix: indices must be 1 or 2");
    Mat2 r{};
    if (row == 1 && col == 1) r.e11 = 1;
    if (row == 1 && col == 2) r.e12 = 1;
    if (row == 2 && col == 1) r.e21 = 1;
    if (row == 2 && col == 2) r.e22 = 1;
    return r;
}

std::string mstr(const Mat2& x) {
    std::ostringstream os;
    os << "[[" << x.e11 << "," << x.e12 << "],[" << x.e21 << "," << x.e22
       << "]]";
    return os.str();
}

uint64_t mpack(const Mat2& x, uint64_t m) {
    return ((x.e11 * m + x.e12) * m + x.e21) * m + x.e22;
}

Mat2 munpack(uint64_t idx, uint64_t m) {
    Mat2 x;
    x.e22 = idx % m;
    idx /= m;
    x.e21 = idx % m;
    idx /= m;
    x.e12 = idx % m;
    idx /= m;
    x.e11 = idx % m;
    return x;
}

std::vector<Vec2M1> enumerate_m1(uint64_t p, unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    std::vector<Vec2M1> out;
    out.reserve(static_cast<size_t>(ps + ps / p));
    for (uint64_t a = 0; a < ps; ++a)
        out.push_back(Vec2M1{Vec2M1::FirstUnit, a});
    for (uint64_t b = 0; b < ps; b += p)
        out.push_back(Vec2M1{Vec2M1::SecondUnit, b});
    // second family iterates non-units only, i.e. multiples of p
    check_internal(out.size() == ps + ps / p, "m1 family size");
    return out;
}

Vec2M1 orthogonal_partner(const Vec2M1& alpha, uint64_t p, unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    if (alpha.kind == Vec2M1::FirstUnit) {
        uint64_t a = alpha.free % ps;
        if (a % p != 0) {
            // (1 a) . (1 -a^{-1})^t = 1 - 1 = 0
            return Vec2M1{Vec2M1::FirstUnit, sub_mod(0, inv_mod(a, ps), ps)};
        }
        // (1 a) . (-a 1)^t = -a + a = 0, and -a is a non-unit
        return Vec2M1{Vec2M1::SecondUnit, sub_mod(0, a, ps)};
    }
    // (b 1) . (1 -b)^t = b - b = 0
    return Vec2M1{Vec2M1::FirstUnit, sub_mod(0, alpha.free % ps, ps)};
}

M1Normalization normalize_to_m1(uint64_t v1, uint64_t v2, uint64_t p,
                                unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    v1 %= ps;
    v2 %= ps;
    if (v1 % p != 0) {
        uint64_t u = v1;
        return M1Normalization{
            u, Vec2M1{Vec2M1::FirstUnit, mul_mod(v2, inv_mod(u, ps), ps)}};
    }
    require(v2 % p != 0, "normalize_to_m1: vector has no unit entry");
    uint64_t u = v2;
    return M1Normalization{
        u, Vec2M1{Vec2M1::SecondUnit, mul_mod(v1, inv_mod(u, ps), ps)}};
}

namespace {

struct PivotData {
    unsigned i;        // common p-valuation of all entries
    Mat2 Ap;           // A / p^i, entries reduced into [0, p^{s-i})
    int m0, n0;        // 1-based pivot position, lex smallest unit of Ap
    uint64_t schur;    // complementary Schur complement mod p^s
};

PivotData pivot_eliminate(const Mat2& A, uint64_t p, unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    require(!A.is_zero(), "matrix is zero");
    uint64_t ent[4] = {A.e11, A.e12, A.e21, A.e22};
    unsigned i = s;
    for (uint64_t v : ent) i = std::min(i, valuation(v, p, s));
    check_internal(i < s, "nonzero matrix has valuation < s");
    uint64_t pi = 1;
    for (unsigned t = 0; t < i; ++t) pi *= p;
    Mat2 Ap{ent[0] / pi, ent[1] / pi, ent[2] / pi, ent[3] / pi};
    uint64_t ap[4] = {Ap.e11, Ap.e12, Ap.e21, Ap.e22};
    int pivot = -1;
    for (int k = 0; k < 4; ++k)
        if (ap[k] % p != 0) {
            pivot = k;
            break;
        }
    check_internal(pivot >= 0, "A/p^i has a unit entry");
    int m0 = pivot / 2 + 1, n0 = pivot % 2 + 1;
    int m = 3 - m0, n = 3 - n0;
    auto at = [&](int r, int c) { return ap[(r - 1) * 2 + (c - 1)]; };
    uint64_t v = at(m0, n0);
    uint64_t schur = sub_mod(
        at(m, n), mul_mod(mul_mod(at(m, n0), at(m0, n), ps), inv_mod(v, ps), ps),
        ps);
    return PivotData{i, Ap, m0, n0, schur};
}

} // namespace

SmithType smith_type(const Mat2& A, uint64_t p, unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    PivotData pd = pivot_eliminate(A, p, s);
    SmithType st;
    st.i = pd.i;
    uint64_t pi = 1;
    for (unsigned t = 0; t < pd.i; ++t) pi *= p;
    uint64_t lifted = mul_mod(pi, pd.schur, ps);
    if (lifted == 0) {
        st.j_is_zero = true;
        // cross-check: a rank-one p^i A' has vanishing determinant
        check_internal(mul_mod(pi, mul_mod(pi, mdet(pd.Ap, ps), ps), ps) ==
                           mdet(A, ps) % ps,
                       "det consistency");
    } else {
        st.j_is_zero = false;
        st.j = pd.i + valuation(pd.schur, p, s);
        check_internal(st.j < s, "second exponent below s");
        if (st.i + st.j < s) {
            check_internal(valuation(mdet(A, ps), p, s) == st.i + st.j,
                           "det valuation equals i + j");
        }
    }
    return st;
}

CanonicalFactorization canonical_factorize(const Mat2& A, uint64_t p,
                                           unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    PivotData pd = pivot_eliminate(A, p, s);
    uint64_t ap[4] = {pd.Ap.e11, pd.Ap.e12, pd.Ap.e21, pd.Ap.e22};
    auto at = [&](int r, int c) { return ap[(r - 1) * 2 + (c - 1)]; };
    int m0 = pd.m0, n0 = pd.n0, m = 3 - pd.m0, n = 3 - pd.n0;

    CanonicalFactorization f;
    f.i = pd.i;
    M1Normalization colN = normalize_to_m1(at(1, n0), at(2, n0), p, s);
    M1Normalization rowN = normalize_to_m1(at(m0, 1), at(m0, 2), p, s);
    f.alpha = colN.m1;
    f.beta = rowN.m1;
    uint64_t v = at(m0, n0);
    f.u1 = mul_mod(mul_mod(colN.unit, rowN.unit, ps), inv_mod(v, ps), ps);

    uint64_t pi = 1;
    for (unsigned t = 0; t < pd.i; ++t) pi *= p;
    if (mul_mod(pi, pd.schur, ps) != 0) {
        unsigned ve = valuation(pd.schur, p, s);
        uint64_t pe = 1;
        for (unsigned t = 0; t < ve; ++t) pe *= p;
        f.second = CanonicalFactorization::SecondTerm{pd.schur / pe,
                                                      pd.i + ve, m, n};
    }
    check_internal(reconstruct(f, p, s) == Mat2{A.e11 % ps, A.e12 % ps,
                                                A.e21 % ps, A.e22 % ps},
                   "factorization reconstructs the input");
    return f;
}

Mat2 reconstruct(const CanonicalFactorization& f, uint64_t p, unsigned s) {
    uint64_t ps = 1;
    for (unsigned t = 0; t < s; ++t) ps *= p;
    uint64_t a1 = f.alpha.v1() % ps, a2 = f.alpha.v2() % ps;
    uint64_t b1 = f.beta.v1() % ps, b2 = f.beta.v2() % ps;
    Mat2 T{mul_mod(a1, b1, ps), mul_mod(a1, b2, ps), mul_mod(a2, b1, ps),
           mul_mod(a2, b2, ps)};
    uint64_t pi = 1;
    for (unsigned t = 0; t < f.i; ++t) pi *= p;
    Mat2 out = mscale(mul_mod(f.u1, pi, ps), T, ps);
    if (f.second) {
        uint64_t pj = 1;
        for (unsigned t = 0; t < f.second->j; ++t) pj *= p;
        Mat2 E = basis_matrix(f.second->m, f.second->n, ps);
        out = madd(out, mscale(mul_mod(f.second->u2 % ps, pj, ps), E, ps), ps);
    }
    return out;
}

QuatMatIso make_iso(uint64_t p, unsigned s) {
    require(p % 2 == 1 && p > 1, "make_iso: p must be odd");
    QuatMatIso iso;
    iso.p = p;
    iso.s = s;
    iso.root = lift_sum_of_squares(p, s);
    return iso;
}

Mat2 quat_to_mat(const Quat& q, const QuatMatIso& iso) {
    uint64_t ps = iso.root.pw;
    uint64_t x = iso.root.x, y = iso.root.y;
    uint64_t a = q.a % ps, b = q.b % ps, c = q.c % ps, d = q.d % ps;
    // i -> [[x,y],[y,-x]], j -> [[0,1],[-1,0]], k -> [[-y,x],[x,y]]
    Mat2 out;
    out.e11 = sub_mod(add_mod(a, mul_mod(b, x, ps), ps), mul_mod(d, y, ps), ps);
    out.e12 = add_mod(add_mod(mul_mod(b, y, ps), c, ps), mul_mod(d, x, ps), ps);
    out.e21 = add_mod(sub_mod(mul_mod(b, y, ps), c, ps), mul_mod(d, x, ps), ps);
    out.e22 = add_mod(sub_mod(a, mul_mod(b, x, ps), ps), mul_mod(d, y, ps), ps);
    return out;
}

Quat mat_to_quat(const Mat2& mt, const QuatMatIso& iso) {
    uint64_t ps = iso.root.pw;
    uint64_t x = iso.root.x, y = iso.root.y;
    uint64_t half = inv_mod(2 % ps, ps);
    uint64_t a = mul_mod(add_mod(mt.e11, mt.e22, ps), half, ps);
    uint64_t c = mul_mod(sub_mod(mt.e12, mt.e21, ps), half, ps);
    uint64_t r1 = mul_mod(sub_mod(mt.e11, mt.e22, ps), half, ps);
    uint64_t r2 = mul_mod(add_mod(mt.e12, mt.e21, ps), half, ps);
    // invert [[x,-y],[y,x]] whose determinant x^2+y^2 = -1
    uint64_t b = sub_mod(0, add_mod(mul_mod(x, r1, ps), mul_mod(y, r2, ps), ps),
                         ps);
    uint64_t d = sub_mod(mul_mod(y, r1, ps), mul_mod(x, r2, ps), ps);
    return Quat{a, b, c, d};
}

} // namespace lzdg
