#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "verify.hpp"

using namespace lzdg;

namespace {

RunConfig cheap_config() {
    RunConfig cfg;
    cfg.max_s = 1;
    cfg.primes = {};                  // skip the slower matrix dominations
    cfg.measure_odd_composite = false; // skip the 682-class search
    return cfg;
}

std::map<std::string, const VerifyCheck*> by_id(const VerifyReport& rep) {
    std::map<std::string, const VerifyCheck*> m;
    for (const auto& c : rep.checks) m[c.id] = &c;
    return m;
}

} // namespace

TEST_CASE("the cheap configuration passes end to end") {
    VerifyReport rep = run_verify(cheap_config());
    CHECK(rep.all_pass);
    CHECK(rep.checks.size() == 31);

    auto idx = by_id(rep);
    REQUIRE(idx.size() == 31); // ids are unique

    // every check lands in a defined state
    for (const auto& c : rep.checks) {
        CHECK((c.status == "pass" || c.status == "fail" ||
               c.status == "skipped"));
        CHECK(!c.id.empty());
        CHECK(!c.claim.empty());
    }

    // the gated checks are reported as skipped, not silently dropped
    for (const char* id : {"twin-partition-s2", "twin-partition-s3",
                           "twin-partition-s4", "degree-table",
                           "neighbor-formulas", "aut-orders", "aut-structural",
                           "aut-lifting-s2", "regular-sampling",
                           "domination-mat-3-1", "domination-mat-5-1",
                           "domination-mat-3-2", "domination-odd-composite"}) {
        REQUIRE(idx.count(id) == 1);
        CHECK(idx[id]->status == "skipped");
    }

    // the arithmetic core runs even in the smallest configuration
    for (const char* id :
         {"quat-arithmetic", "unit-criterion", "orthogonal-partner",
          "smith-factorization", "two-adic-factorization", "vertex-counts",
          "oracle-equivalence", "domination-2power", "domination-composite",
          "constructive-composite", "composed-class-counts"}) {
        REQUIRE(idx.count(id) == 1);
        CHECK(idx[id]->status == "pass");
    }
}

TEST_CASE("an injected failure is caught and propagated") {
    RunConfig cfg = cheap_config();
    cfg.inject_failure = true;
    VerifyReport rep = run_verify(cfg);
    CHECK_FALSE(rep.all_pass);
    auto idx = by_id(rep);
    REQUIRE(idx.count("vertex-counts") == 1);
    CHECK(idx["vertex-counts"]->status == "fail");
    // exactly one check fails: the corrupted expectation
    int failures = 0;
    for (const auto& c : rep.checks)
        if (c.status == "fail") ++failures;
    CHECK(failures == 1);
}

TEST_CASE("prime gating only hides the matrix dominations") {
    RunConfig cfg = cheap_config();
    cfg.primes = {3};
    VerifyReport rep = run_verify(cfg);
    CHECK(rep.all_pass);
    auto idx = by_id(rep);
    CHECK(idx["domination-mat-3-1"]->status == "pass");
    CHECK(idx["domination-mat-3-2"]->status == "pass");
    CHECK(idx["domination-mat-5-1"]->status == "skipped");
}
