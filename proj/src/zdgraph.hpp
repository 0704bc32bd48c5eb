#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bitrows.hpp"
#include "ring.hpp"

namespace lzdg {

// directed zero-divisor graph on the nonzero zero divisors of a ring;
// row u of out_rows marks {v : x_u x_v = 0}, including the diagonal
// bit when x_u^2 = 0. The graph view (edges, degrees) excludes the
// diagonal; twin detection uses the raw annihilator rows.
struct ZdGraph {
    RingCtx ring;
    std::vector<uint64_t> verts; // packed element ids, ascending
    BitRows out_rows;
    BitRows in_rows;

    size_t vertex_count() const { return verts.size(); }
    uint64_t edge_count() const; // undirected, loopless
    bool adjacent(size_t u, size_t v) const {
        return u != v && (out_rows.get(u, v) || in_rows.get(u, v));
    }
};

// exact pairwise construction; requires the whole ring to be
// enumerable (caller enforces the configured cap)
ZdGraph build_vertex_graph(const RingCtx& ring, unsigned threads);

// true iff xy = 0 implies yx = 0 across all vertex pairs
bool is_reversible(const ZdGraph& g);

struct TwinPartition {
    std::vector<std::vector<uint32_t>> classes; // members ascending; classes ordered by first member
    std::vector<uint32_t> class_of;
    std::vector<uint8_t> self_adjacent;
};

// vertices u, v share a class iff their (out, in) annihilator rows
// coincide as sets
TwinPartition twin_partition(const ZdGraph& g);

// class-level graph over twin classes; diagonal bit of adj mirrors
// the self-adjacency loop flag
struct ClassGraph {
    uint32_t count = 0;
    std::vector<uint64_t> sizes;
    BitRows adj;
    std::vector<uint8_t> self_adjacent;
    std::vector<uint64_t> rep_elems; // packed ring element per class
    std::vector<std::string> labels;

    bool cls_adjacent(uint32_t a, uint32_t b) const {
        return a != b && adj.get(a, b);
    }
    uint64_t vertex_total() const;
    uint64_t edge_total() const; // undirected loopless edges of the underlying graph
};

ClassGraph class_graph(const ZdGraph& g, const TwinPartition& t);

// compressed graph: classes with equal open class-neighborhood and
// equal loop flag are identified (this is where the odd-s triple
// collapses); subclasses records which input classes each compressed
// vertex absorbed
struct CompressedGraph {
    ClassGraph merged;
    std::vector<std::vector<uint32_t>> subclasses;
};

CompressedGraph compress_classes(const ClassGraph& cg);

// convenience: full pipeline on a vertex graph
CompressedGraph compress(const ZdGraph& g, const TwinPartition& t);

} // namespace lzdg
