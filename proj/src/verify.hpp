#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lzdg {

struct RunConfig {
    unsigned max_s = 5;
    std::vector<uint64_t> primes = {3, 5};
    uint64_t element_cap = 1000000;
    uint64_t pair_cap = 24000;
    uint32_t class_cap = 512;
    unsigned threads = 0;
    uint64_t seed = 12345;
    std::string out_dir;
    std::vector<std::string> exports;
    bool measure_odd_composite = true;
    // negative control: corrupt one expected value so the harness is
    // seen to catch a failure
    bool inject_failure = false;
};

struct VerifyCheck {
    std::string id;
    std::string claim;
    std::string status; // pass, fail, skipped
    std::string measured;
    std::string expected;
    uint64_t elapsed_ms = 0;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = false; // across non-skipped checks
    uint64_t total_ms = 0;
};

VerifyReport run_verify(const RunConfig& cfg);

} // namespace lzdg
