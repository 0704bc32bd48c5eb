#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "automorphism.hpp"
#include "classgraph.hpp"
#include "errors.hpp"
#include "zdgraph.hpp"

using namespace lzdg;

namespace {

BigInt factorial_product(const std::vector<uint64_t>& sizes) {
    BigInt r = 1;
    for (uint64_t sz : sizes)
        for (uint64_t k = 2; k <= sz; ++k) r *= k;
    return r;
}

uint32_t loopless_degree(const ClassGraph& g, uint32_t u) {
    uint32_t d = 0;
    for (uint32_t v = 0; v < g.count; ++v)
        if (g.cls_adjacent(u, v)) ++d;
    return d;
}

} // namespace

TEST_CASE("predicted automorphism orders") {
    CHECK(predicted_order(1) == 1);
    CHECK(predicted_order(2) == 12);
    CHECK(predicted_order(3) == 36);
    CHECK(predicted_order(4) == 432);
    CHECK(predicted_order(5) == 1296);
    CHECK(predicted_order(6) == 15552);
}

TEST_CASE("automorphism groups of the compressed graphs") {
    for (unsigned s : {2u, 3u, 4u}) {
        LabeledClasses lc = labeled_compressed(s);
        AutGroupSummary aut = find_automorphisms(lc.cg.merged);
        CHECK(aut.order == predicted_order(s));
        CHECK(aut.autos.size() == aut.order);
        CHECK(aut.group_closed);
        // the list contains the identity and only valid automorphisms
        bool has_identity = false;
        std::set<Perm> dedup;
        for (const Perm& f : aut.autos) {
            CHECK(is_automorphism(lc.cg.merged, f));
            dedup.insert(f);
            bool ident = true;
            for (size_t u = 0; u < f.size(); ++u) ident &= f[u] == u;
            has_identity |= ident;
        }
        CHECK(has_identity);
        CHECK(dedup.size() == aut.order);
    }
}

TEST_CASE("the tiny ring carries one extra graph symmetry") {
    // the two-vertex compressed graph at s = 1 has a swap that the
    // structure predictions do not count; the orders are kept separate
    LabeledClasses lc = labeled_compressed(1);
    REQUIRE(lc.cg.merged.count == 2);
    AutGroupSummary aut = find_automorphisms(lc.cg.merged);
    CHECK(aut.order == 2);
    CHECK(predicted_order(1) == 1);
}

TEST_CASE("stabilization and pairing hold for every automorphism") {
    for (unsigned s : {2u, 3u, 4u}) {
        LabeledClasses lc = labeled_compressed(s);
        AutGroupSummary aut = find_automorphisms(lc.cg.merged);
        for (const Perm& f : aut.autos) {
            CheckReport stab = check_stabilization(lc, f);
            CheckReport pair = check_pairing(lc, f);
            CHECK(stab.pass);
            CHECK(pair.pass);
        }
    }
}

TEST_CASE("non-automorphisms are rejected") {
    LabeledClasses lc = labeled_compressed(2);
    const ClassGraph& g = lc.cg.merged;
    // swapping two vertices of different degree breaks adjacency
    uint32_t pick_u = UINT32_MAX, pick_v = UINT32_MAX;
    for (uint32_t u = 0; u < g.count && pick_u == UINT32_MAX; ++u)
        for (uint32_t v = u + 1; v < g.count; ++v)
            if (loopless_degree(g, u) != loopless_degree(g, v)) {
                pick_u = u;
                pick_v = v;
                break;
            }
    REQUIRE(pick_u != UINT32_MAX);
    Perm swap(g.count);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[pick_u], swap[pick_v]);
    CHECK_FALSE(is_automorphism(g, swap));
}

TEST_CASE("automorphism cap triggers the resource guard") {
    LabeledClasses lc = labeled_compressed(2);
    CHECK_THROWS_AS(find_automorphisms(lc.cg.merged, 5), resource_limit);
}

TEST_CASE("single-class graph has only the identity") {
    ClassGraph g;
    g.count = 1;
    g.sizes = {5};
    g.adj = BitRows(1, 1);
    g.self_adjacent = {0};
    g.rep_elems = {0};
    g.labels = {"c0"};
    AutGroupSummary aut = find_automorphisms(g);
    CHECK(aut.order == 1);
    CHECK(aut.group_closed);
}

TEST_CASE("regular order is the twin factorial product") {
    ZdGraph g2 = build_vertex_graph(make_quat_ring(2), 0);
    TwinPartition t2 = twin_partition(g2);
    CHECK(reg_order(t2) == 8); // 2! 2! 2! 1!

    // structural variant: factorials of orbit sizes, then one block
    // permutation factor per compressed vertex
    Structural2Adic st1 = structural_2adic(1);
    CHECK(reg_order_structural(1) ==
          factorial_product(st1.twins.sizes) * 6); // the 3-way block merge
    Structural2Adic st2 = structural_2adic(2);
    CHECK(reg_order_structural(2) == factorial_product(st2.twins.sizes));
    Structural2Adic st3 = structural_2adic(3);
    CHECK(reg_order_structural(3) ==
          factorial_product(st3.twins.sizes) * 6); // one merged triple

    // the structural and enumerated answers agree where both exist
    ZdGraph g4 = build_vertex_graph(make_quat_ring(4), 0);
    TwinPartition t4 = twin_partition(g4);
    CHECK(reg_order_structural(2) == reg_order(t4));
}

TEST_CASE("compressed automorphisms lift to the vertex graph at s = 2") {
    ZdGraph g = build_vertex_graph(make_quat_ring(4), 0);
    TwinPartition t = twin_partition(g);
    CompressedGraph cg = compress(g, t);
    // at s = 2 nothing merges, so compressed vertices are twin classes
    REQUIRE(cg.merged.count == t.classes.size());
    AutGroupSummary aut = find_automorphisms(cg.merged);
    REQUIRE(aut.order == 12);
    std::set<std::vector<uint32_t>> lifted;
    for (const Perm& f : aut.autos) {
        // the merged vertex order coincides with the twin class order
        // when nothing merges, but map through subclasses regardless
        Perm on_classes(t.classes.size());
        for (uint32_t mu = 0; mu < cg.merged.count; ++mu) {
            REQUIRE(cg.subclasses[mu].size() == 1);
            REQUIRE(cg.subclasses[f[mu]].size() == 1);
            on_classes[cg.subclasses[mu][0]] = uint8_t(cg.subclasses[f[mu]][0]);
        }
        CHECK(lift_and_check(g, t, on_classes));
        std::vector<uint32_t> phi = lift_permutation(t, on_classes);
        CHECK(vertex_permutation_preserves(g, phi));
        // bijectivity of the lift
        std::vector<uint32_t> sorted = phi;
        std::sort(sorted.begin(), sorted.end());
        for (uint32_t k = 0; k < sorted.size(); ++k) CHECK(sorted[k] == k);
        lifted.insert(std::move(phi));
    }
    CHECK(lifted.size() == 12);
}

TEST_CASE("within-class shuffles preserve adjacency") {
    ZdGraph g = build_vertex_graph(make_quat_ring(4), 0);
    TwinPartition t = twin_partition(g);
    RegularSampleReport rep = sample_regular_automorphisms(g, t, 100, 42);
    CHECK(rep.trials == 100);
    CHECK(rep.passed == 100);
    CHECK(rep.all_pass);

    // negative control: swapping representatives of two classes with
    // different degrees is not an automorphism
    auto degree = [&](uint32_t u) {
        uint32_t d = 0;
        for (uint32_t v = 0; v < g.vertex_count(); ++v)
            if (g.adjacent(u, v)) ++d;
        return d;
    };
    uint32_t a = UINT32_MAX, b = UINT32_MAX;
    for (uint32_t c1 = 0; c1 < t.classes.size() && a == UINT32_MAX; ++c1)
        for (uint32_t c2 = c1 + 1; c2 < t.classes.size() && a == UINT32_MAX;
             ++c2) {
            uint32_t u = t.classes[c1][0], v = t.classes[c2][0];
            if (degree(u) != degree(v)) {
                a = u;
                b = v;
            }
        }
    REQUIRE(a != UINT32_MAX);
    std::vector<uint32_t> phi(g.vertex_count());
    std::iota(phi.begin(), phi.end(), 0);
    std::swap(phi[a], phi[b]);
    CHECK_FALSE(vertex_permutation_preserves(g, phi));
}
