#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "classgraph.hpp"
#include "zdgraph.hpp"

namespace lzdg {

using BigInt = boost::multiprecision::cpp_int;

using Perm = std::vector<uint8_t>; // image per compressed vertex

// compressed 2-power class graph with the (l, pi) tag sets per vertex
// and the position of each tag
struct LabeledClasses {
    unsigned s = 0;
    CompressedGraph cg;
    std::vector<std::vector<SlotClasses::Tag>> vtags;
    // vert_of[l][pi]; the (s-1, dM) slot aliases the folded dP class
    std::vector<std::array<uint32_t, kPiCount>> vert_of;
};

LabeledClasses labeled_compressed(unsigned s);

struct AutGroupSummary {
    uint64_t order = 0;
    std::vector<Perm> autos; // complete element list, lexicographic
    bool group_closed = false;
};

// complete automorphism list of the loopless view of the class graph
AutGroupSummary find_automorphisms(const ClassGraph& g, uint64_t cap = 10000);

bool is_automorphism(const ClassGraph& g, const Perm& f);

// order predicted by the direct-product decomposition
uint64_t predicted_order(unsigned s);

struct CheckReport {
    bool pass = true;
    std::string detail;
};

// f must map each P_m and each Q_n onto itself, fix the deepest
// delta class, and for even s fix the middle power class
CheckReport check_stabilization(const LabeledClasses& lc, const Perm& f);

// the S3 element induced on P_m equals the one on P_{s-1-m}; on the
// Q side the pairing holds after conjugating by the delta swap
CheckReport check_pairing(const LabeledClasses& lc, const Perm& f);

// product of factorials of twin class sizes
BigInt reg_order(const TwinPartition& t);

// same quantity for the 2-power ring from the orbit size formula,
// times one block-permutation factorial per compressed vertex
BigInt reg_order_structural(unsigned s);

// lift a compressed automorphism to the vertex graph along ascending
// member order and check adjacency preservation over all vertex pairs
bool lift_and_check(const ZdGraph& g, const TwinPartition& t, const Perm& f);

// the lifted full-graph permutation itself (images per vertex index)
std::vector<uint32_t> lift_permutation(const TwinPartition& t, const Perm& f);

struct RegularSampleReport {
    uint64_t trials = 0;
    uint64_t passed = 0;
    bool all_pass = false;
};

// seeded within-class shuffles must preserve adjacency edge by edge
RegularSampleReport sample_regular_automorphisms(const ZdGraph& g,
                                                 const TwinPartition& t,
                                                 uint64_t trials,
                                                 uint64_t seed);

// adjacency preservation of an arbitrary vertex permutation
bool vertex_permutation_preserves(const ZdGraph& g,
                                  const std::vector<uint32_t>& phi);

} // namespace lzdg
