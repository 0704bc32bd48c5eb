#include "zdgraph.hpp"

#include <algorithm>
#include <bit>

#include "errors.hpp"
#include "parallel.hpp"

namespace lzdg {

uint64_t ZdGraph::edge_count() const {
    uint64_t twice = 0;
    size_t v = vertex_count();
    for (size_t u = 0; u < v; ++u) {
        const uint64_t* o = out_rows.row(u);
        const uint64_t* i = in_rows.row(u);
        for (size_t k = 0; k < out_rows.words_per_row(); ++k)
            twice += std::popcount(o[k] | i[k]);
        if (out_rows.get(u, u)) twice -= 1; // drop the loop bit
    }
    return twice / 2;
}

ZdGraph build_vertex_graph(const RingCtx& ring, unsigned threads) {
    ZdGraph g;
    g.ring = ring;
    g.verts = zero_divisors(ring);
    size_t v = g.verts.size();
    g.out_rows = BitRows(v, v);
    g.in_rows = BitRows(v, v);

    if (ring.kind == RingKind::QuatModN) {
        std::vector<Quat> el(v);
        for (size_t u = 0; u < v; ++u) el[u] = qunpack(g.verts[u], ring.n);
        parallel_ranges(v, resolve_threads(threads), [&](size_t lo, size_t hi) {
            for (size_t u = lo; u < hi; ++u)
                for (size_t w = 0; w < v; ++w)
                    if (qmul(el[u], el[w], ring.n).is_zero())
                        g.out_rows.set(u, w);
        });
    } else {
        std::vector<Mat2> el(v);
        for (size_t u = 0; u < v; ++u) el[u] = munpack(g.verts[u], ring.n);
        parallel_ranges(v, resolve_threads(threads), [&](size_t lo, size_t hi) {
            for (size_t u = lo; u < hi; ++u)
                for (size_t w = 0; w < v; ++w)
                    if (mmul(el[u], el[w], ring.n).is_zero())
                        g.out_rows.set(u, w);
        });
    }

    for (size_t u = 0; u < v; ++u) {
        const uint64_t* row = g.out_rows.row(u);
        for (size_t k = 0; k < g.out_rows.words_per_row(); ++k) {
            uint64_t bits = row[k];
            while (bits) {
                size_t w = k * 64 + static_cast<size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                g.in_rows.set(w, u);
            }
        }
    }
    return g;
}

bool is_reversible(const ZdGraph& g) {
    size_t v = g.vertex_count();
    for (size_t u = 0; u < v; ++u) {
        const uint64_t* o = g.out_rows.row(u);
        const uint64_t* i = g.in_rows.row(u);
        for (size_t k = 0; k < g.out_rows.words_per_row(); ++k)
            if (o[k] != i[k]) return false;
    }
    return true;
}

TwinPartition twin_partition(const ZdGraph& g) {
    size_t v = g.vertex_count();
    std::vector<uint64_t> key(v);
    for (size_t u = 0; u < v; ++u)
        key[u] = g.out_rows.hash_row(u) * 1000003ull + g.in_rows.hash_row(u);

    std::vector<uint32_t> order(v);
    for (size_t u = 0; u < v; ++u) order[u] = static_cast<uint32_t>(u);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return key[a] != key[b] ? key[a] < key[b] : a < b;
    });

    TwinPartition t;
    t.class_of.assign(v, UINT32_MAX);
    std::vector<std::vector<uint32_t>> groups;
    size_t pos = 0;
    while (pos < v) {
        size_t end = pos;
        while (end < v && key[order[end]] == key[order[pos]]) ++end;
        // hash bucket; split by exact row comparison to be safe
        std::vector<uint32_t> bucket(order.begin() + pos, order.begin() + end);
        std::vector<uint32_t> done;
        for (uint32_t u : bucket) {
            bool placed = false;
            for (uint32_t gidx : done) {
                uint32_t repr = groups[gidx][0];
                if (g.out_rows.rows_equal(u, repr) &&
                    g.in_rows.rows_equal(u, repr)) {
                    groups[gidx].push_back(u);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                done.push_back(static_cast<uint32_t>(groups.size()));
                groups.push_back({u});
            }
        }
        pos = end;
    }

    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    t.classes = std::move(groups);
    t.self_adjacent.resize(t.classes.size());
    for (size_t c = 0; c < t.classes.size(); ++c) {
        for (uint32_t u : t.classes[c]) t.class_of[u] = static_cast<uint32_t>(c);
        uint32_t rep = t.classes[c][0];
        // members annihilate each other iff each squares to zero
        t.self_adjacent[c] = g.out_rows.get(rep, rep) ? 1 : 0;
    }
    return t;
}

uint64_t ClassGraph::vertex_total() const {
    uint64_t total = 0;
    for (uint64_t s : sizes) total += s;
    return total;
}

uint64_t ClassGraph::edge_total() const {
    uint64_t twice = 0;
    for (uint32_t a = 0; a < count; ++a) {
        for (uint32_t b = 0; b < count; ++b) {
            if (a == b) continue;
            if (adj.get(a, b)) twice += sizes[a] * sizes[b];
        }
        if (self_adjacent[a]) twice += sizes[a] * (sizes[a] - 1);
    }
    return twice / 2;
}

ClassGraph class_graph(const ZdGraph& g, const TwinPartition& t) {
    size_t v = g.vertex_count();
    uint32_t count = static_cast<uint32_t>(t.classes.size());
    ClassGraph cg;
    cg.count = count;
    cg.sizes.resize(count);
    cg.self_adjacent = t.self_adjacent;
    cg.adj = BitRows(count, count);
    cg.rep_elems.resize(count);
    cg.labels.resize(count);

    size_t words = g.out_rows.words_per_row();
    std::vector<std::vector<uint64_t>> masks(
        count, std::vector<uint64_t>(words, 0));
    for (uint32_t c = 0; c < count; ++c) {
        cg.sizes[c] = t.classes[c].size();
        uint32_t rep = t.classes[c][0];
        cg.rep_elems[c] = g.verts[rep];
        cg.labels[c] = g.ring.elem_str(g.verts[rep]);
        for (uint32_t u : t.classes[c])
            masks[c][u / 64] |= (uint64_t{1} << (u % 64));
    }

    for (uint32_t c = 0; c < count; ++c) {
        uint32_t rep = t.classes[c][0];
        const uint64_t* o = g.out_rows.row(rep);
        const uint64_t* i = g.in_rows.row(rep);
        for (uint32_t d = 0; d < count; ++d) {
            if (d == c) continue;
            bool hit = false;
            for (size_t k = 0; k < words && !hit; ++k)
                hit = ((o[k] | i[k]) & masks[d][k]) != 0;
            if (hit) cg.adj.set(c, d);
        }
        if (cg.self_adjacent[c]) cg.adj.set(c, c);
    }

    for (uint32_t c = 0; c < count; ++c)
        for (uint32_t d = 0; d < c; ++d)
            check_internal(cg.adj.get(c, d) == cg.adj.get(d, c),
                           "class adjacency is symmetric");
    return cg;
}

CompressedGraph compress_classes(const ClassGraph& cg) {
    uint32_t count = cg.count;
    size_t words = cg.adj.words_per_row();

    // group classes whose open neighborhood sets and loop flags agree
    std::vector<uint32_t> group_of(count, UINT32_MAX);
    std::vector<std::vector<uint32_t>> groups;
    std::vector<uint64_t> rowa(words), rowb(words);
    for (uint32_t c = 0; c < count; ++c) {
        bool placed = false;
        for (size_t gidx = 0; gidx < groups.size() && !placed; ++gidx) {
            uint32_t d = groups[gidx][0];
            if (cg.self_adjacent[c] != cg.self_adjacent[d]) continue;
            // open neighborhoods: drop each row's own loop bit only, so
            // adjacent classes can never be identified
            std::memcpy(rowa.data(), cg.adj.row(c), words * 8);
            std::memcpy(rowb.data(), cg.adj.row(d), words * 8);
            rowa[c / 64] &= ~(uint64_t{1} << (c % 64));
            rowb[d / 64] &= ~(uint64_t{1} << (d % 64));
            if (std::memcmp(rowa.data(), rowb.data(), words * 8) == 0) {
                groups[gidx].push_back(c);
                group_of[c] = static_cast<uint32_t>(gidx);
                placed = true;
            }
        }
        if (!placed) {
            group_of[c] = static_cast<uint32_t>(groups.size());
            groups.push_back({c});
        }
    }

    CompressedGraph out;
    uint32_t gcount = static_cast<uint32_t>(groups.size());
    out.subclasses = groups;
    out.merged.count = gcount;
    out.merged.sizes.resize(gcount);
    out.merged.self_adjacent.resize(gcount);
    out.merged.adj = BitRows(gcount, gcount);
    out.merged.rep_elems.resize(gcount);
    out.merged.labels.resize(gcount);
    for (uint32_t gi = 0; gi < gcount; ++gi) {
        uint64_t size = 0;
        for (uint32_t c : groups[gi]) size += cg.sizes[c];
        out.merged.sizes[gi] = size;
        out.merged.self_adjacent[gi] = cg.self_adjacent[groups[gi][0]];
        out.merged.rep_elems[gi] = cg.rep_elems[groups[gi][0]];
        out.merged.labels[gi] = cg.labels[groups[gi][0]];
        if (out.merged.self_adjacent[gi]) out.merged.adj.set(gi, gi);
    }
    for (uint32_t c = 0; c < count; ++c)
        for (uint32_t d = 0; d < count; ++d)
            if (c != d && cg.adj.get(c, d) && group_of[c] != group_of[d])
                out.merged.adj.set(group_of[c], group_of[d]);
    return out;
}

CompressedGraph compress(const ZdGraph& g, const TwinPartition& t) {
    return compress_classes(class_graph(g, t));
}

} // namespace lzdg
