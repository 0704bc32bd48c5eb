#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "classgraph.hpp"
#include "mat2.hpp"
#include "ring.hpp"
#include "zdgraph.hpp"

namespace lzdg {

// twin-compressed domination instance: symmetric class adjacency with
// the diagonal bit mirroring self-adjacency
struct DomInstance {
    uint32_t count = 0;
    std::vector<uint64_t> sizes;
    BitRows adj;
    std::vector<uint8_t> self_adjacent;
    std::vector<std::string> labels; // optional, witness reporting
};

DomInstance dom_instance(const ClassGraph& cg);

struct DominationResult {
    uint64_t gamma = 0;
    std::vector<std::pair<uint32_t, uint64_t>> witness; // (class, count)
    std::vector<std::string> certificate;
    bool optimal = false;
    uint64_t nodes = 0;
};

// provably minimum domination over the expanded graph, computed on the
// compressed instance; per class the chosen count is 0, 1, or the full
// class size
DominationResult exact_domination(const DomInstance& inst, uint32_t class_cap);

// exhaustive oracle over closed neighborhood masks (vertex i covered
// by bit i); masks must include the self bit
uint64_t brute_force_domination(const std::vector<uint64_t>& closed_masks);

std::vector<uint64_t> closed_masks_of(const ZdGraph& g);

// compressed instance of a plain undirected loopless graph given by
// closed masks (used by the randomized oracle-equivalence checks)
DomInstance dom_instance_plain(const std::vector<uint64_t>& closed_masks);

// the p+1 matrices p^{s-1} alpha^t alpha over the M^1 family
std::vector<Mat2> paper_dominating_set(uint64_t p, unsigned s);

// dominating set of the quaternion ring mod n assembled slotwise: the
// 2-part contributes one element, each odd prime power slot the image
// of the matrix construction
std::vector<uint64_t> composite_dominating_set(uint64_t n);

// every nonzero zero divisor outside the set must annihilate against
// some member (either side)
bool dominates(const RingCtx& ring, const std::vector<uint64_t>& set,
               unsigned threads);

// expand a witness over ring elements: vertex-level variant
std::vector<uint64_t> expand_witness(const ZdGraph& g, const TwinPartition& t,
                                     const DominationResult& r);
// composed-class variant
std::vector<uint64_t> expand_witness(const ComposedClasses& cc,
                                     const DominationResult& r);

} // namespace lzdg
