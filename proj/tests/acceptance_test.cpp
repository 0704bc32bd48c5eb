// acceptance gate: one pass/fail line per criterion, exit code equals
// the number of failed criteria

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "automorphism.hpp"
#include "classgraph.hpp"
#include "degree_table.hpp"
#include "domination.hpp"
#include "mat2.hpp"
#include "modular.hpp"
#include "quaternion.hpp"
#include "ring.hpp"
#include "zdgraph.hpp"

using namespace lzdg;

namespace {

int failures = 0;

uint64_t now_ms() {
    return uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now().time_since_epoch())
                        .count());
}

void report(int idx, bool pass, const std::string& text) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": "
              << text << std::endl;
    if (!pass) ++failures;
}

// exact domination on the odd prime power matrix rings, with budgets
void criterion1() {
    struct Case {
        uint64_t p;
        unsigned s;
        uint64_t gamma;
        uint64_t budget_ms;
    };
    bool pass = true;
    std::ostringstream os;
    os << "exact domination, odd prime powers:";
    for (Case c : {Case{3, 1, 4, 1000}, Case{5, 1, 6, 30000},
                   Case{3, 2, 4, 120000}}) {
        uint64_t t0 = now_ms();
        RingCtx ring = make_mat_ring(c.p, c.s);
        ZdGraph g = build_vertex_graph(ring, 0);
        TwinPartition t = twin_partition(g);
        DominationResult res =
            exact_domination(dom_instance(class_graph(g, t)), 512);
        std::vector<uint64_t> set = expand_witness(g, t, res);
        bool dom = dominates(ring, set, 0) && set.size() == res.gamma;
        uint64_t ms = now_ms() - t0;
        bool ok = res.optimal && res.gamma == c.gamma && dom &&
                  ms < c.budget_ms;
        pass = pass && ok;
        os << " M2(Z_" << ring.n << ") gamma " << res.gamma << " in " << ms
           << " ms (budget " << c.budget_ms << ")" << (ok ? ";" : " FAIL;");
    }
    report(1, pass, os.str());
}

// exact domination across the quaternion moduli, n = 10 within budget
void criterion2() {
    struct Case {
        uint64_t n;
        uint64_t gamma;
    };
    bool pass = true;
    std::ostringstream os;
    os << "exact domination, quaternion moduli:";
    for (Case c : {Case{2, 1}, Case{4, 1}, Case{8, 1}, Case{6, 5},
                   Case{12, 5}, Case{10, 7}}) {
        uint64_t t0 = now_ms();
        ComposedClasses cc = composed_classes(c.n, true);
        DominationResult res = exact_domination(dom_instance(cc.twins), 512);
        std::vector<uint64_t> set = expand_witness(cc, res);
        bool dom =
            dominates(make_quat_ring(c.n), set, 0) && set.size() == res.gamma;
        uint64_t ms = now_ms() - t0;
        bool ok = res.optimal && res.gamma == c.gamma && dom;
        if (c.n == 10) ok = ok && ms <= 600000;
        pass = pass && ok;
        os << " n=" << c.n << " gamma " << res.gamma << " in " << ms << " ms"
           << (ok ? ";" : " FAIL;");
    }
    report(2, pass, os.str() + " (n=10 budget 600000 ms)");
}

// closed-form dominating sets: predicted sizes, full-graph verification
void criterion3() {
    bool pass = true;
    std::ostringstream os;
    os << "constructive dominating sets:";
    for (auto [p, s] :
         {std::pair<uint64_t, unsigned>{3, 1}, {3, 2}, {5, 1}}) {
        std::vector<Mat2> set = paper_dominating_set(p, s);
        RingCtx ring = make_mat_ring(p, s);
        std::vector<uint64_t> packed;
        for (const Mat2& m : set) packed.push_back(mpack(m, ring.n));
        bool dom = dominates(ring, packed, 0);
        bool ok = set.size() == p + 1 && dom;
        pass = pass && ok;
        os << " M2(Z_" << ring.n << ") size " << set.size()
           << (ok ? " dominates;" : " FAIL;");
    }
    for (auto [n, expect] : {std::pair<uint64_t, uint64_t>{2, 1},
                             {4, 1},
                             {8, 1},
                             {6, 5},
                             {12, 5},
                             {10, 7}}) {
        std::vector<uint64_t> set = composite_dominating_set(n);
        bool dom = dominates(make_quat_ring(n), set, 0);
        bool ok = set.size() == expect && dom;
        pass = pass && ok;
        os << " n=" << n << " size " << set.size()
           << (ok ? " dominates;" : " FAIL;");
    }
    report(3, pass, os.str());
}

// automorphism search counts equal the predicted orders, within budget
void criterion4() {
    bool pass = true;
    std::ostringstream os;
    os << "automorphism group orders:";
    for (unsigned s : {2u, 3u, 4u}) {
        uint64_t t0 = now_ms();
        LabeledClasses lc = labeled_compressed(s);
        AutGroupSummary aut = find_automorphisms(lc.cg.merged);
        uint64_t ms = now_ms() - t0;
        uint64_t predicted = predicted_order(s);
        bool ok =
            aut.order == predicted && aut.group_closed && ms < 10000;
        pass = pass && ok;
        os << " s=" << s << " order " << aut.order << "/" << predicted
           << " in " << ms << " ms" << (ok ? ";" : " FAIL;");
    }
    report(4, pass, os.str() + " (budget 10000 ms each)");
}

// every found automorphism passes the stabilization and pairing checks
void criterion5() {
    bool pass = true;
    std::ostringstream os;
    os << "stabilization and pairing:";
    for (unsigned s : {2u, 3u, 4u}) {
        LabeledClasses lc = labeled_compressed(s);
        AutGroupSummary aut = find_automorphisms(lc.cg.merged);
        uint64_t stab_fail = 0, pair_fail = 0;
        for (const Perm& f : aut.autos) {
            if (!check_stabilization(lc, f).pass) ++stab_fail;
            if (!check_pairing(lc, f).pass) ++pair_fail;
        }
        bool ok = stab_fail == 0 && pair_fail == 0 && !aut.autos.empty();
        pass = pass && ok;
        os << " s=" << s << " " << aut.autos.size() << " automorphisms, "
           << (stab_fail + pair_fail) << " violations"
           << (ok ? ";" : " FAIL;");
    }
    report(5, pass, os.str());
}

// measured compressed degrees equal the closed-form table
void criterion6() {
    bool pass = true;
    std::ostringstream os;
    os << "degree tables:";
    for (unsigned s : {2u, 3u, 4u, 5u}) {
        DegreeCheck dc = check_degree_table(s);
        bool ok = dc.pass && dc.mismatches.empty();
        pass = pass && ok;
        os << " s=" << s << " " << dc.mismatches.size() << " mismatches"
           << (ok ? ";" : " FAIL;");
    }
    report(6, pass, os.str());
}

// factorization building blocks, exhaustively at the stated sizes
void criterion7() {
    bool pass = true;
    std::ostringstream os;

    // unique orthogonal partner in the normalized vector family
    struct PCase {
        uint64_t p;
        unsigned s;
    };
    uint64_t partner_checked = 0;
    bool partner_ok = true;
    for (PCase c : {PCase{3, 1}, PCase{3, 2}, PCase{5, 1}, PCase{2, 2},
                    PCase{2, 3}}) {
        uint64_t ps = 1;
        for (unsigned k = 0; k < c.s; ++k) ps *= c.p;
        std::vector<Vec2M1> fam = enumerate_m1(c.p, c.s);
        for (const Vec2M1& a : fam) {
            uint64_t hits = 0;
            Vec2M1 unique_hit;
            for (const Vec2M1& b : fam) {
                uint64_t dot = (a.v1() * b.v1() + a.v2() * b.v2()) % ps;
                if (dot == 0) {
                    ++hits;
                    unique_hit = b;
                }
            }
            Vec2M1 predicted = orthogonal_partner(a, c.p, c.s);
            if (hits != 1 || !(unique_hit == predicted)) partner_ok = false;
            ++partner_checked;
        }
    }
    pass = pass && partner_ok;
    os << "partner uniqueness over " << partner_checked << " vectors"
       << (partner_ok ? ";" : " FAIL;");

    // canonical matrix factorization round-trips over every zero divisor
    {
        RingCtx ring = make_mat_ring(3, 2);
        std::vector<uint64_t> zds = zero_divisors(ring);
        uint64_t bad = 0;
        for (uint64_t x : zds) {
            Mat2 a = munpack(x, ring.n);
            CanonicalFactorization f = canonical_factorize(a, 3, 2);
            if (!(reconstruct(f, 3, 2) == a)) ++bad;
        }
        bool ok = zds.size() == 2672 && bad == 0;
        pass = pass && ok;
        os << " matrix round-trip over " << zds.size() << " zero divisors, "
           << bad << " failures" << (ok ? ";" : " FAIL;");
    }

    // 2-adic factorization: round-trip and folded (l, pi) uniqueness
    {
        uint64_t bad = 0, total = 0;
        for (unsigned s = 1; s <= 3; ++s) {
            uint64_t n = uint64_t(1) << s;
            for (uint64_t x = 1; x < n * n * n * n; ++x) {
                Quat q = qunpack(x, n);
                QuatFactorization f = factorize_2adic(q, s);
                Quat rebuilt =
                    qscale(uint64_t(1) << f.l,
                           qmul(pi_element(f.pi, n), f.alpha0, n), n);
                if (!(rebuilt == q) || !q_is_unit(f.alpha0, n)) ++bad;
                auto cands = factorization_candidates(q, s);
                std::set<std::pair<unsigned, PiTag>> folded;
                for (auto [l, pi] : cands) {
                    if (l == s - 1 && pi == PiTag::DM) pi = PiTag::DP;
                    folded.insert({l, pi});
                }
                if (folded.size() != 1 ||
                    *folded.begin() != std::make_pair(f.l, f.pi))
                    ++bad;
                ++total;
            }
        }
        bool ok = bad == 0;
        pass = pass && ok;
        os << " 2-adic round-trip over " << total << " elements, " << bad
           << " failures" << (ok ? "" : " FAIL");
    }
    report(7, pass, os.str());
}

// twin classes equal unit orbits; the depth-3 triple merge appears
void criterion8() {
    bool pass = true;
    std::ostringstream os;
    os << "twin characterization:";
    for (unsigned s : {2u, 3u}) {
        uint64_t n = uint64_t(1) << s;
        ZdGraph g = build_vertex_graph(make_quat_ring(n), 0);
        TwinPartition t = twin_partition(g);
        EquivClasses eq = equivalence_classes(s, 1000000);

        std::set<std::vector<uint64_t>> twin_sets, orbit_sets;
        for (const auto& cls : t.classes) {
            std::vector<uint64_t> mem;
            for (uint32_t v : cls) mem.push_back(g.verts[v]);
            twin_sets.insert(mem);
        }
        std::vector<std::vector<uint64_t>> orbits(eq.classes.size());
        for (uint64_t x = 1; x < n * n * n * n; ++x) {
            uint32_t c = eq.class_of[x];
            if (!eq.classes[c].unit_class) orbits[c].push_back(x);
        }
        for (auto& o : orbits)
            if (!o.empty()) orbit_sets.insert(o);
        bool match = twin_sets == orbit_sets;

        CompressedGraph cg = compress(g, t);
        bool merge_ok;
        if (s == 2) {
            merge_ok = cg.merged.count == 10;
            for (const auto& sub : cg.subclasses)
                merge_ok = merge_ok && sub.size() == 1;
        } else {
            merge_ok = cg.merged.count == 14;
            uint32_t multi = 0;
            size_t multi_size = 0;
            for (const auto& sub : cg.subclasses)
                if (sub.size() > 1) {
                    ++multi;
                    multi_size = sub.size();
                }
            merge_ok = merge_ok && multi == 1 && multi_size == 3;
        }
        bool ok = match && merge_ok;
        pass = pass && ok;
        os << " s=" << s << " " << t.classes.size() << " twin classes, "
           << cg.merged.count << " compressed" << (ok ? ";" : " FAIL;");
    }
    {
        bool ok = verify_structural_twins(4, 0);
        pass = pass && ok;
        os << " s=4 streamed pairwise check"
           << (ok ? " consistent" : " FAIL");
    }
    report(8, pass, os.str());
}

// the compressed solver agrees with the brute-force oracle everywhere
void criterion9() {
    bool pass = true;
    std::ostringstream os;
    os << "oracle equivalence:";
    {
        RingCtx ring = make_mat_ring(3, 1);
        ZdGraph g = build_vertex_graph(ring, 0);
        uint64_t brute = brute_force_domination(closed_masks_of(g));
        TwinPartition t = twin_partition(g);
        DominationResult res =
            exact_domination(dom_instance(class_graph(g, t)), 512);
        bool ok = brute == res.gamma && res.optimal;
        pass = pass && ok;
        os << " M2(Z_3) " << brute << "=" << res.gamma
           << (ok ? ";" : " FAIL;");
    }
    {
        RingCtx ring = make_quat_ring(2);
        ZdGraph g = build_vertex_graph(ring, 0);
        uint64_t brute = brute_force_domination(closed_masks_of(g));
        TwinPartition t = twin_partition(g);
        DominationResult res =
            exact_domination(dom_instance(class_graph(g, t)), 512);
        bool ok = brute == res.gamma && res.optimal;
        pass = pass && ok;
        os << " Z_2[i,j,k] " << brute << "=" << res.gamma
           << (ok ? ";" : " FAIL;");
    }
    uint64_t agree = 0, total = 50;
    std::mt19937_64 rng(12345);
    for (uint64_t idx = 0; idx < total; ++idx) {
        size_t v = 4 + size_t(rng() % 17);
        std::vector<uint64_t> closed(v);
        for (size_t u = 0; u < v; ++u) closed[u] = uint64_t(1) << u;
        for (size_t a = 0; a < v; ++a)
            for (size_t b = a + 1; b < v; ++b)
                if (rng() % 100 < 30) {
                    closed[a] |= uint64_t(1) << b;
                    closed[b] |= uint64_t(1) << a;
                }
        uint64_t brute = brute_force_domination(closed);
        DominationResult res =
            exact_domination(dom_instance_plain(closed), 512);
        if (res.gamma == brute && res.optimal) ++agree;
    }
    pass = pass && agree == total;
    os << " random " << agree << "/" << total;
    report(9, pass, os.str());
}

// the quaternion ring maps isomorphically onto the matrix ring
void criterion10() {
    bool pass = true;
    std::ostringstream os;
    os << "matrix ring isomorphism:";
    {
        QuatMatIso iso = make_iso(3, 1);
        uint64_t bad = 0;
        std::set<uint64_t> image;
        for (uint64_t x = 0; x < 81; ++x) {
            Quat qx = qunpack(x, 3);
            Mat2 mx = quat_to_mat(qx, iso);
            image.insert(mpack(mx, 3));
            if (!(mat_to_quat(mx, iso) == qx)) ++bad;
            for (uint64_t y = 0; y < 81; ++y) {
                Quat qy = qunpack(y, 3);
                Mat2 my = quat_to_mat(qy, iso);
                if (!(quat_to_mat(qmul(qx, qy, 3), iso) == mmul(mx, my, 3)))
                    ++bad;
                if (!(quat_to_mat(qadd(qx, qy, 3), iso) == madd(mx, my, 3)))
                    ++bad;
            }
        }
        bool ok = bad == 0 && image.size() == 81;
        pass = pass && ok;
        os << " p^s=3 exhaustive, image " << image.size() << "/81, " << bad
           << " failures" << (ok ? ";" : " FAIL;");
    }
    for (auto [p, s] : {std::pair<uint64_t, unsigned>{3, 2}, {5, 2}}) {
        QuatMatIso iso = make_iso(p, s);
        uint64_t n = 1;
        for (unsigned k = 0; k < s; ++k) n *= p;
        uint64_t size = n * n * n * n;
        std::mt19937_64 rng(12345);
        uint64_t bad = 0, samples = 100000;
        for (uint64_t it = 0; it < samples; ++it) {
            Quat qx = qunpack(rng() % size, n);
            Quat qy = qunpack(rng() % size, n);
            Mat2 mx = quat_to_mat(qx, iso);
            Mat2 my = quat_to_mat(qy, iso);
            if (!(quat_to_mat(qmul(qx, qy, n), iso) == mmul(mx, my, n)))
                ++bad;
            if (!(quat_to_mat(qadd(qx, qy, n), iso) == madd(mx, my, n)))
                ++bad;
            if (!(mat_to_quat(mx, iso) == qx)) ++bad;
        }
        bool ok = bad == 0;
        pass = pass && ok;
        os << " p^s=" << n << " " << samples << " sampled pairs, " << bad
           << " failures" << (ok ? ";" : " FAIL;");
    }
    report(10, pass, os.str());
}

// one-sided zero products: quaternion rings reversible, matrices not
void criterion11() {
    bool pass = true;
    std::ostringstream os;
    os << "reversibility:";
    for (unsigned s : {1u, 2u}) {
        ZdGraph g = build_vertex_graph(make_quat_ring(uint64_t(1) << s), 0);
        bool rev = is_reversible(g);
        pass = pass && rev;
        os << " 2^" << s << (rev ? " reversible;" : " FAIL;");
    }
    Mat2 e11 = basis_matrix(1, 1, 3), e12 = basis_matrix(1, 2, 3);
    bool counter =
        mmul(e12, e11, 3).is_zero() && !mmul(e11, e12, 3).is_zero();
    pass = pass && counter;
    os << " matrix counterexample "
       << (counter ? "found (E12*E11 = 0, E11*E12 != 0)" : "MISSING");
    report(11, pass, os.str());
}

} // namespace

int main() {
    uint64_t t0 = now_ms();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    uint64_t ms = now_ms() - t0;
    if (failures == 0)
        std::cout << "all 11 criteria satisfied in " << ms << " ms\n";
    else
        std::cout << failures << " of 11 criteria failed (" << ms << " ms)\n";
    return failures;
}
