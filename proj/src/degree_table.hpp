#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "classgraph.hpp"

namespace lzdg {

// closed-form compressed degree for a class with the given tag; the
// fractional thresholds are read as exact integer comparisons on 2m
uint64_t expected_degree(unsigned s, unsigned l, PiTag pi);

// expected degrees aligned with the compressed vertex order
std::vector<uint64_t> expected_degrees(const LabeledClasses& lc);

struct DegreeCheck {
    bool pass = true;
    std::vector<std::string> mismatches;
};

// measured loopless degrees of the compressed graph against the table
DegreeCheck check_degree_table(unsigned s);

struct NeighborClauseReport {
    std::string clause;
    bool literal_pass = false;
    bool completed_pass = false; // literal plus the power classes
    std::string note;
};

// compare each symbolic neighborhood union against the measured
// class adjacency of the uncompressed structural graph
std::vector<NeighborClauseReport> neighbor_formula_check(unsigned s);

} // namespace lzdg
