#include "lzdg/lzdg.h"

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "automorphism.hpp"
#include "classgraph.hpp"
#include "domination.hpp"
#include "errors.hpp"
#include "export.hpp"
#include "ring.hpp"
#include "verify.hpp"
#include "zdgraph.hpp"

// graph bundle behind the opaque handle: vertex-level data when the
// ring fits the pairwise cap, class-level data otherwise (2-power and
// composite quaternion rings only)
struct lzdg_graph_s {
    lzdg::RingCtx ring;
    std::optional<lzdg::ZdGraph> vertex_graph;
    std::optional<lzdg::TwinPartition> twins;
    lzdg::ClassGraph classes;
    lzdg::CompressedGraph compressed;
};

struct lzdg_json_s {
    std::string text;
};

namespace {

using namespace lzdg;

constexpr uint64_t kPairwiseCap = 24000;
constexpr uint64_t kDefaultElementCap = 1000000;
constexpr uint32_t kDefaultClassCap = 512;

thread_local std::string g_last_error;

lzdg_rc enter() {
    g_last_error.clear();
    return LZDG_OK;
}

lzdg_rc fail(lzdg_rc rc, const std::string& msg) {
    g_last_error = msg;
    return rc;
}

lzdg_rc guard(const std::function<lzdg_rc()>& body) {
    try {
        return body();
    } catch (const invalid_input& e) {
        return fail(LZDG_E_INVALID, e.what());
    } catch (const resource_limit& e) {
        return fail(LZDG_E_RESOURCE, e.what());
    } catch (const io_error& e) {
        return fail(LZDG_E_IO, e.what());
    } catch (const internal_error& e) {
        return fail(LZDG_E_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LZDG_E_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(LZDG_E_INTERNAL, e.what());
    } catch (...) {
        return fail(LZDG_E_INTERNAL, "unknown failure");
    }
}

lzdg_json_t* make_json(std::string text) {
    auto* j = new lzdg_json_s;
    j->text = std::move(text);
    return j;
}

std::unique_ptr<lzdg_graph_s> build_bundle(const RingCtx& ring,
                                           uint32_t threads,
                                           uint64_t element_cap) {
    if (element_cap == 0) element_cap = kDefaultElementCap;
    if (ring.size() > element_cap)
        throw resource_limit("ring size " + std::to_string(ring.size()) +
                             " exceeds the element cap " +
                             std::to_string(element_cap));
    auto bundle = std::make_unique<lzdg_graph_s>();
    bundle->ring = ring;
    if (ring.size() <= kPairwiseCap) {
        bundle->vertex_graph = build_vertex_graph(ring, threads);
        bundle->twins = twin_partition(*bundle->vertex_graph);
        bundle->classes = class_graph(*bundle->vertex_graph, *bundle->twins);
    } else {
        if (ring.kind != RingKind::QuatModN)
            throw resource_limit(
                "matrix rings beyond the pairwise cap are not supported");
        ComposedClasses cc = composed_classes(ring.n, true);
        bundle->classes = std::move(cc.twins);
    }
    bundle->compressed = compress_classes(bundle->classes);
    return bundle;
}

GraphStats stats_of(const lzdg_graph_s& g) {
    GraphStats st;
    st.ring = g.ring.kind == RingKind::QuatModN ? "quat" : "mat";
    st.n = g.ring.n;
    st.vertices = g.classes.vertex_total();
    st.edges = g.classes.edge_total();
    st.twin_classes = g.classes.count;
    st.compressed_vertices = g.compressed.merged.count;
    st.vertex_level = g.vertex_graph.has_value();
    return st;
}

lzdg_rc domination_common(const RingCtx& ring, uint32_t class_cap,
                          uint32_t threads, lzdg_json_t** out) {
    if (class_cap == 0) class_cap = kDefaultClassCap;
    auto t0 = std::chrono::steady_clock::now();
    DominationRecord rec;
    rec.n = ring.n;
    rec.ring = ring.kind == RingKind::QuatModN ? "quat" : "mat";
    DominationResult res;
    std::vector<uint64_t> expanded;
    if (ring.kind == RingKind::QuatModN) {
        ComposedClasses cc = composed_classes(ring.n, true);
        res = exact_domination(dom_instance(cc.twins), class_cap);
        rec.labels = cc.twins.labels;
        expanded = expand_witness(cc, res);
    } else {
        if (ring.size() > kPairwiseCap)
            throw resource_limit("matrix ring too large for the exact solver");
        ZdGraph g = build_vertex_graph(ring, threads);
        TwinPartition t = twin_partition(g);
        ClassGraph cg = class_graph(g, t);
        res = exact_domination(dom_instance(cg), class_cap);
        rec.labels = cg.labels;
        expanded = expand_witness(g, t, res);
    }
    if (expanded.size() <= kPairwiseCap &&
        ring.size() <= kDefaultElementCap) {
        check_internal(dominates(ring, expanded, threads),
                       "expanded witness fails to dominate");
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.elapsed_ms = uint64_t(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
            .count());
    rec.result = &res;
    *out = make_json(domination_json(rec));
    return LZDG_OK;
}

lzdg_rc construct_common(const RingCtx& ring, lzdg_json_t** out) {
    ConstructRecord rec;
    rec.n = ring.n;
    rec.ring = ring.kind == RingKind::QuatModN ? "quat" : "mat";
    std::vector<uint64_t> packed;
    if (ring.kind == RingKind::QuatModN) {
        packed = composite_dominating_set(ring.n);
    } else {
        for (const Mat2& m : paper_dominating_set(ring.p, ring.s))
            packed.push_back(mpack(m, ring.n));
    }
    for (uint64_t x : packed) rec.elements.push_back(ring.elem_str(x));
    rec.verified = dominates(ring, packed, 0);
    *out = make_json(construct_json(rec));
    return rec.verified ? LZDG_OK
                        : fail(LZDG_E_CHECK,
                               "constructive set fails the domination check");
}

} // namespace

extern "C" {

const char* lzdg_version(void) { return "1.0.0"; }

const char* lzdg_strerror(int rc) {
    switch (rc) {
    case LZDG_OK: return "ok";
    case LZDG_E_CHECK: return "verification check failed";
    case LZDG_E_INVALID: return "invalid argument";
    case LZDG_E_RESOURCE: return "resource cap exceeded";
    case LZDG_E_IO: return "file input/output failed";
    case LZDG_E_INTERNAL: return "internal error";
    default: return "unknown status code";
    }
}

const char* lzdg_last_error(void) { return g_last_error.c_str(); }

lzdg_rc lzdg_graph_build_quat(uint64_t n, uint32_t threads,
                              uint64_t element_cap, lzdg_graph_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        *out = build_bundle(make_quat_ring(n), threads, element_cap).release();
        return LZDG_OK;
    });
}

lzdg_rc lzdg_graph_build_mat(uint32_t p, uint32_t s, uint32_t threads,
                             uint64_t element_cap, lzdg_graph_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        *out =
            build_bundle(make_mat_ring(p, s), threads, element_cap).release();
        return LZDG_OK;
    });
}

void lzdg_graph_free(lzdg_graph_t* g) { delete g; }

lzdg_rc lzdg_graph_vertices(const lzdg_graph_t* g, uint64_t* out) {
    enter();
    if (g == nullptr || out == nullptr)
        return fail(LZDG_E_INVALID, "null argument");
    *out = g->classes.vertex_total();
    return LZDG_OK;
}

lzdg_rc lzdg_graph_edges(const lzdg_graph_t* g, uint64_t* out) {
    enter();
    if (g == nullptr || out == nullptr)
        return fail(LZDG_E_INVALID, "null argument");
    *out = g->classes.edge_total();
    return LZDG_OK;
}

lzdg_rc lzdg_graph_classes(const lzdg_graph_t* g, uint64_t* out) {
    enter();
    if (g == nullptr || out == nullptr)
        return fail(LZDG_E_INVALID, "null argument");
    *out = g->classes.count;
    return LZDG_OK;
}

lzdg_rc lzdg_graph_stats_json(const lzdg_graph_t* g, lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (g == nullptr || out == nullptr)
            return fail(LZDG_E_INVALID, "null argument");
        *out = make_json(stats_json(stats_of(*g)));
        return LZDG_OK;
    });
}

lzdg_rc lzdg_graph_export(const lzdg_graph_t* g, const char* format,
                          const char* path) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (g == nullptr || format == nullptr || path == nullptr)
            return fail(LZDG_E_INVALID, "null argument");
        std::string fmt(format);
        if (fmt == "csv") {
            write_text_file(path, class_csv(g->classes));
            return LZDG_OK;
        }
        if (fmt != "dot" && fmt != "json")
            return fail(LZDG_E_INVALID, "unknown export format: " + fmt);
        if (!g->vertex_graph)
            return fail(LZDG_E_RESOURCE,
                        "vertex-level export needs a pairwise-built graph");
        write_text_file(path, fmt == "dot"
                                  ? graph_dot(*g->vertex_graph)
                                  : graph_adj_json(*g->vertex_graph));
        return LZDG_OK;
    });
}

lzdg_rc lzdg_domination_exact_quat(uint64_t n, uint32_t class_cap,
                                   uint32_t threads, lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        return domination_common(make_quat_ring(n), class_cap, threads, out);
    });
}

lzdg_rc lzdg_domination_exact_mat(uint32_t p, uint32_t s, uint32_t class_cap,
                                  uint32_t threads, lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        return domination_common(make_mat_ring(p, s), class_cap, threads, out);
    });
}

lzdg_rc lzdg_domination_construct_quat(uint64_t n, lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        return construct_common(make_quat_ring(n), out);
    });
}

lzdg_rc lzdg_domination_construct_mat(uint32_t p, uint32_t s,
                                      lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        return construct_common(make_mat_ring(p, s), out);
    });
}

lzdg_rc lzdg_aut_summary(uint32_t s, lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        LabeledClasses lc = labeled_compressed(s);
        AutGroupSummary aut = find_automorphisms(lc.cg.merged);
        AutRecord rec;
        rec.s = s;
        rec.compressed_vertices = lc.cg.merged.count;
        rec.aut_order = aut.order;
        rec.predicted = predicted_order(s);
        rec.reg = reg_order_structural(s);
        rec.full_product = rec.reg * BigInt(aut.order);
        rec.stabilization_all = true;
        rec.pairing_all = true;
        if (s >= 2) {
            for (const Perm& f : aut.autos) {
                if (!check_stabilization(lc, f).pass)
                    rec.stabilization_all = false;
                if (!check_pairing(lc, f).pass) rec.pairing_all = false;
            }
        }
        *out = make_json(aut_json(rec));
        return LZDG_OK;
    });
}

lzdg_rc lzdg_verify(uint32_t max_s, uint32_t threads, uint64_t seed,
                    uint32_t inject_failure, lzdg_json_t** out) {
    enter();
    return guard([&]() -> lzdg_rc {
        if (out == nullptr) return fail(LZDG_E_INVALID, "null out pointer");
        RunConfig cfg;
        cfg.max_s = max_s;
        cfg.threads = threads;
        cfg.seed = seed;
        cfg.inject_failure = inject_failure != 0;
        VerifyReport rep = run_verify(cfg);
        *out = make_json(verify_json(rep));
        return rep.all_pass
                   ? LZDG_OK
                   : fail(LZDG_E_CHECK, "one or more checks failed");
    });
}

const char* lzdg_json_str(const lzdg_json_t* j) {
    return j == nullptr ? "" : j->text.c_str();
}

void lzdg_json_free(lzdg_json_t* j) { delete j; }

} // extern "C"
