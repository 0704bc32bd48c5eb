#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "degree_table.hpp"

using namespace lzdg;

TEST_CASE("compressed degrees match the closed-form table") {
    for (unsigned s = 2; s <= 5; ++s) {
        DegreeCheck dc = check_degree_table(s);
        CHECK(dc.pass);
        CHECK(dc.mismatches.empty());
    }
}

TEST_CASE("expected degrees align with measured loopless degrees") {
    for (unsigned s : {2u, 3u, 4u}) {
        LabeledClasses lc = labeled_compressed(s);
        const ClassGraph& g = lc.cg.merged;
        std::vector<uint64_t> expect = expected_degrees(lc);
        REQUIRE(expect.size() == g.count);
        for (uint32_t u = 0; u < g.count; ++u) {
            uint64_t measured = 0;
            for (uint32_t v = 0; v < g.count; ++v)
                if (g.cls_adjacent(u, v)) ++measured;
            CHECK(measured == expect[u]);
        }
        // the deepest delta vertex touches every other compressed vertex
        uint32_t deep = lc.vert_of[s - 1][unsigned(PiTag::DP)];
        REQUIRE(deep < g.count);
        CHECK(expect[deep] == g.count - 1);
    }
}

TEST_CASE("neighborhood clauses read literally except the deepest") {
    for (unsigned s : {2u, 3u, 4u}) {
        auto reports = neighbor_formula_check(s);
        REQUIRE(reports.size() == 6);
        for (const NeighborClauseReport& r : reports) {
            bool is_vi = r.clause.rfind("(vi)", 0) == 0;
            if (is_vi) {
                // the deepest delta clause needs the power classes added
                CHECK_FALSE(r.literal_pass);
                CHECK(r.completed_pass);
            } else {
                CHECK(r.literal_pass);
            }
        }
        // the six clauses appear in their roman-numeral order
        CHECK(reports[0].clause.rfind("(i)", 0) == 0);
        CHECK(reports[5].clause.rfind("(vi)", 0) == 0);
    }
}
