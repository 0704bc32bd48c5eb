#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bitrows.hpp"
#include "ring.hpp"
#include "zdgraph.hpp"

namespace lzdg {

// annihilator classes of one prime-power slot ring, covering the whole
// ring: index 0 is the zero class, index 1 the unit class, zero-divisor
// classes follow in a deterministic order. Directed zero-product
// relations between classes are all-or-none, so one representative
// product per ordered pair captures them exactly.
struct SlotClasses {
    RingCtx ring;
    uint32_t count = 0;
    std::vector<uint64_t> sizes;
    std::vector<uint64_t> reps;     // packed slot elements
    std::vector<uint8_t> is_zero;   // exactly class 0
    std::vector<uint8_t> is_unit;   // exactly class 1
    std::vector<uint32_t> class_of; // per packed element; may be empty in structural mode
    BitRows zright;                 // bit (c,d): rep_c * rep_d = 0

    // 2-adic slots only: the (l, pi) tag per zero-divisor class
    struct Tag {
        unsigned l = 0;
        PiTag pi = PiTag::One;
    };
    std::vector<Tag> tags; // indexed like classes; meaningful for kind 2 entries
    bool has_tags = false;
};

// classify one slot ring; enumerate=false skips the element scan and
// is available for 2-power slots only (sizes from the orbit formula)
SlotClasses slot_classes(const RingCtx& slot, bool enumerate);

// twin-class graph of the quaternion ring mod n, assembled from slot
// classes via the product decomposition; usable when the ring itself
// is too large for pairwise construction
struct ComposedClasses {
    Modulus mod;                           // factorization of n
    std::vector<SlotClasses> slots;
    ClassGraph twins;
    std::vector<std::vector<std::vector<uint32_t>>> tuples; // per twin class: list of slot-class tuples
};

ComposedClasses composed_classes(uint64_t n, bool enumerate_slots);

// expand a twin class into packed ring elements (guarded by cap)
std::vector<uint64_t> class_members(const ComposedClasses& cc, uint32_t cls,
                                    uint64_t cap);

// the structural class graph of the 2-power ring, with (l, pi) tags in
// canonical order; never enumerates elements, so any s up to the
// packing limit works
struct Structural2Adic {
    unsigned s = 0;
    ClassGraph twins; // 6s-2 zero-divisor classes
    std::vector<SlotClasses::Tag> tags;
};

Structural2Adic structural_2adic(unsigned s);

// exhaustive streaming check that the structural classes really are
// twin classes of the vertex graph: every ordered class pair must be
// all-zero or zero-free in products, and class annihilator rows must
// be pairwise distinct. Returns false on any violation.
bool verify_structural_twins(unsigned s, unsigned threads);

} // namespace lzdg
