#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "quaternion.hpp"

using namespace lzdg;

namespace {

Quat rand_quat(std::mt19937_64& rng, uint64_t n) {
    return Quat{rng() % n, rng() % n, rng() % n, rng() % n};
}

// candidate (l, pi) list with the top-level dM alias folded onto dP
std::vector<std::pair<unsigned, PiTag>> folded_candidates(const Quat& x,
                                                          unsigned s) {
    auto cands = factorization_candidates(x, s);
    std::set<std::pair<unsigned, PiTag>> folded;
    for (auto [l, pi] : cands) {
        if (l == s - 1 && pi == PiTag::DM) pi = PiTag::DP;
        folded.insert({l, pi});
    }
    return {folded.begin(), folded.end()};
}

} // namespace

TEST_CASE("Hamilton relations") {
    uint64_t n = 7;
    Quat one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    Quat minus1 = qscale(n - 1, one, n);
    CHECK(qmul(i, i, n) == minus1);
    CHECK(qmul(j, j, n) == minus1);
    CHECK(qmul(k, k, n) == minus1);
    CHECK(qmul(i, j, n) == k);
    CHECK(qmul(j, k, n) == i);
    CHECK(qmul(k, i, n) == j);
    CHECK(qmul(j, i, n) == qscale(n - 1, k, n));
    CHECK(qmul(k, j, n) == qscale(n - 1, i, n));
    CHECK(qmul(i, k, n) == qscale(n - 1, j, n));
    CHECK(qmul(one, i, n) == i);
    CHECK(qmul(i, one, n) == i);
}

TEST_CASE("ring axioms on a seeded sample") {
    uint64_t n = 8;
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        Quat x = rand_quat(rng, n), y = rand_quat(rng, n),
             z = rand_quat(rng, n);
        CHECK(qmul(qmul(x, y, n), z, n) == qmul(x, qmul(y, z, n), n));
        CHECK(qmul(x, qadd(y, z, n), n) ==
              qadd(qmul(x, y, n), qmul(x, z, n), n));
        CHECK(qmul(qadd(x, y, n), z, n) ==
              qadd(qmul(x, z, n), qmul(y, z, n), n));
        CHECK(qadd(x, y, n) == qadd(y, x, n));
    }
}

TEST_CASE("conjugation realizes the norm") {
    for (uint64_t n : {4ull, 9ull}) {
        for (uint64_t idx = 0; idx < n * n * n * n; ++idx) {
            Quat x = qunpack(idx, n);
            Quat prod = qmul(x, qconj(x, n), n);
            uint64_t norm = qnorm(x, n);
            CHECK(prod == Quat{norm, 0, 0, 0});
            CHECK(qmul(qconj(x, n), x, n) == Quat{norm, 0, 0, 0});
            uint64_t direct = ((x.a * x.a) % n + (x.b * x.b) % n +
                               (x.c * x.c) % n + (x.d * x.d) % n) %
                              n;
            CHECK(norm == direct);
        }
    }
}

TEST_CASE("norm criterion matches two-sided invertibility") {
    for (uint64_t n : {2ull, 3ull, 4ull}) {
        uint64_t size = n * n * n * n;
        uint64_t units = 0;
        for (uint64_t xi = 0; xi < size; ++xi) {
            Quat x = qunpack(xi, n);
            bool criterion = q_is_unit(x, n);
            bool invertible = false;
            for (uint64_t yi = 0; yi < size && !invertible; ++yi) {
                Quat y = qunpack(yi, n);
                invertible = qmul(x, y, n) == Quat{1, 0, 0, 0} &&
                             qmul(y, x, n) == Quat{1, 0, 0, 0};
            }
            CHECK(criterion == invertible);
            if (criterion) ++units;
        }
        if (n == 2) CHECK(units == 8);
        if (n == 4) CHECK(units == 128);
    }
}

TEST_CASE("packing is a bijection") {
    for (uint64_t n : {2ull, 3ull, 5ull}) {
        std::set<uint64_t> seen;
        for (uint64_t idx = 0; idx < n * n * n * n; ++idx) {
            Quat x = qunpack(idx, n);
            uint64_t back = qpack(x, n);
            CHECK(back == idx);
            seen.insert(back);
        }
        CHECK(seen.size() == n * n * n * n);
    }
    CHECK(qpack(Quat{0, 0, 0, 0}, 6) == 0);
}

TEST_CASE("coefficientwise crt round trip") {
    Modulus m = factorize(12);
    for (uint64_t idx = 0; idx < 12 * 12; ++idx) {
        Quat x{idx % 12, idx / 12, (idx * 7) % 12, (idx * 5) % 12};
        auto parts = crt_split_quat(x, m);
        REQUIRE(parts.size() == 2);
        CHECK(crt_join_quat(parts, m) == x);
    }
}

TEST_CASE("pi factors are the named products") {
    for (unsigned s : {1u, 2u, 3u}) {
        uint64_t n = uint64_t(1) << s;
        Quat i1 = pi_element(PiTag::I1, n);
        Quat j1 = pi_element(PiTag::J1, n);
        Quat k1 = pi_element(PiTag::K1, n);
        CHECK(i1 == Quat{1, 1, 0, 0});
        CHECK(j1 == Quat{1, 0, 1, 0});
        CHECK(k1 == Quat{1, 0, 0, 1});
        CHECK(pi_element(PiTag::One, n) == Quat{1, 0, 0, 0});
        // dP = (1+i)(1+j), dM = (1+i)(1-k)
        CHECK(pi_element(PiTag::DP, n) == qmul(i1, j1, n));
        Quat mk = qscale(n - 1, Quat{0, 0, 0, 1}, n);
        CHECK(pi_element(PiTag::DM, n) == qmul(i1, qadd(Quat{1, 0, 0, 0}, mk, n), n));
    }
    CHECK(std::string(pi_name(PiTag::One)) == "1");
    CHECK(std::string(pi_name(PiTag::I1)) == "1+i");
    CHECK(std::string(pi_name(PiTag::J1)) == "1+j");
    CHECK(std::string(pi_name(PiTag::K1)) == "1+k");
    CHECK(std::string(pi_name(PiTag::DP)) == "1+i+j+k");
    CHECK(std::string(pi_name(PiTag::DM)) == "1+i+j-k");
}

TEST_CASE("2-adic factorization reconstructs and is unique") {
    for (unsigned s : {1u, 2u, 3u}) {
        uint64_t n = uint64_t(1) << s;
        for (uint64_t idx = 1; idx < n * n * n * n; ++idx) {
            Quat x = qunpack(idx, n);
            QuatFactorization f = factorize_2adic(x, s);
            REQUIRE(f.l < s);
            CHECK(q_is_unit(f.alpha0, n));
            Quat rebuilt = qscale(uint64_t(1) << f.l,
                                  qmul(pi_element(f.pi, n), f.alpha0, n), n);
            CHECK(rebuilt == x);
            // after folding the one doubled top tag, the admissible
            // (l, pi) pair is unique and equals the canonical one
            auto folded = folded_candidates(x, s);
            REQUIRE(folded.size() == 1);
            CHECK(folded[0].first == f.l);
            CHECK(folded[0].second == f.pi);
        }
        CHECK_THROWS_AS(factorize_2adic(Quat{0, 0, 0, 0}, s), invalid_input);
    }
}

TEST_CASE("equivalence classes partition the nonzero elements") {
    for (unsigned s : {1u, 2u, 3u}) {
        uint64_t n = uint64_t(1) << s;
        EquivClasses ec = equivalence_classes(s);
        REQUIRE(ec.s == s);
        REQUIRE(ec.n == n);
        // 6s - 2 zero-divisor classes plus the unit class, unit last
        REQUIRE(ec.classes.size() == 6 * size_t(s) - 2 + 1);
        CHECK(ec.classes.back().unit_class);
        for (size_t c = 0; c + 1 < ec.classes.size(); ++c)
            CHECK_FALSE(ec.classes[c].unit_class);
        CHECK(ec.classes.back().size == unit_count_2adic(s));
        // the smallest unit in pack order is k = (0, 0, 0, 1)
        CHECK(ec.classes.back().rep == Quat{0, 0, 0, 1});
        CHECK(q_is_unit(ec.classes.back().rep, n));

        CHECK(ec.class_of.size() == n * n * n * n);
        CHECK(ec.class_of[0] == UINT32_MAX);

        // measured sizes agree with the stored sizes and the kernel formula
        std::map<uint32_t, uint64_t> counts;
        for (uint64_t idx = 1; idx < n * n * n * n; ++idx) {
            REQUIRE(ec.class_of[idx] < ec.classes.size());
            ++counts[ec.class_of[idx]];
        }
        uint64_t total = 0;
        for (size_t c = 0; c < ec.classes.size(); ++c) {
            const EquivClass& cl = ec.classes[c];
            CHECK(counts[uint32_t(c)] == cl.size);
            total += cl.size;
            if (!cl.unit_class) CHECK(cl.size == sim_class_size(s, cl.l, cl.pi));
            // the representative is the lexicographically smallest member
            CHECK(ec.class_of[qpack(cl.rep, n)] == uint32_t(c));
        }
        CHECK(total == n * n * n * n - 1);

        // exactly one merged top class, tagged dP at l = s-1; at s = 1
        // the dM form already coincides with dP mod 2
        size_t merged = 0;
        for (const auto& cl : ec.classes)
            if (cl.merged_top) {
                ++merged;
                CHECK(cl.l == s - 1);
                CHECK(cl.pi == PiTag::DP);
            }
        CHECK(merged == 1);
    }
}

TEST_CASE("equivalence classes respect the element cap") {
    CHECK_THROWS_AS(equivalence_classes(5, 1000), resource_limit);
}

TEST_CASE("unit count closed form") {
    CHECK(unit_count_2adic(1) == 8);
    CHECK(unit_count_2adic(2) == 128);
    CHECK(unit_count_2adic(3) == 2048);
    CHECK(unit_count_2adic(4) == 32768);
    for (unsigned s : {1u, 2u}) {
        uint64_t n = uint64_t(1) << s;
        uint64_t measured = 0;
        for (uint64_t idx = 0; idx < n * n * n * n; ++idx)
            if (q_is_unit(qunpack(idx, n), n)) ++measured;
        CHECK(measured == unit_count_2adic(s));
    }
}
