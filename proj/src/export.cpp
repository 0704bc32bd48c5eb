#include "export.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace lzdg {

namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string graph_dot(const ZdGraph& g) {
    std::ostringstream os;
    os << "graph zdg {\n";
    for (size_t u = 0; u < g.verts.size(); ++u)
        os << "  v" << u << " [label=\"" << g.ring.elem_str(g.verts[u])
           << "\"];\n";
    for (size_t u = 0; u < g.verts.size(); ++u)
        for (size_t v = u + 1; v < g.verts.size(); ++v)
            if (g.adjacent(u, v)) os << "  v" << u << " -- v" << v << ";\n";
    os << "}\n";
    return os.str();
}

std::string graph_adj_json(const ZdGraph& g) {
    json verts = json::array();
    for (uint64_t x : g.verts) {
        auto c = g.ring.coeffs(x);
        verts.push_back(json::array({c[0], c[1], c[2], c[3]}));
    }
    json edges = json::array();
    for (size_t u = 0; u < g.verts.size(); ++u)
        for (size_t v = u + 1; v < g.verts.size(); ++v)
            if (g.adjacent(u, v)) edges.push_back(json::array({u, v}));
    json j;
    j["vertices"] = std::move(verts);
    j["edges"] = std::move(edges);
    return dump(j);
}

std::string class_csv(const ClassGraph& cg) {
    std::ostringstream os;
    os << "label,size,degree,self_adjacent\n";
    for (uint32_t c = 0; c < cg.count; ++c) {
        uint64_t deg = 0;
        for (uint32_t d = 0; d < cg.count; ++d)
            if (cg.cls_adjacent(c, d)) ++deg;
        os << "\"" << cg.labels[c] << "\"," << cg.sizes[c] << "," << deg << ","
           << (cg.self_adjacent[c] ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string stats_json(const GraphStats& st) {
    json j;
    j["ring"] = st.ring;
    j["n"] = st.n;
    j["vertices"] = st.vertices;
    j["edges"] = st.edges;
    j["twin_classes"] = st.twin_classes;
    j["compressed_vertices"] = st.compressed_vertices;
    j["vertex_level"] = st.vertex_level;
    return dump(j);
}

std::string domination_json(const DominationRecord& rec) {
    check_internal(rec.result != nullptr, "domination record without result");
    json witness = json::array();
    for (auto [cls, cnt] : rec.result->witness) {
        std::string label = cls < rec.labels.size()
                                ? rec.labels[cls]
                                : "class" + std::to_string(cls);
        witness.push_back(json::array({label, cnt}));
    }
    json j;
    j["n"] = rec.n;
    j["ring"] = rec.ring;
    j["gamma"] = rec.result->gamma;
    j["witness"] = std::move(witness);
    j["elapsed_ms"] = rec.elapsed_ms;
    j["optimal"] = rec.result->optimal;
    return dump(j);
}

std::string construct_json(const ConstructRecord& rec) {
    json j;
    j["n"] = rec.n;
    j["ring"] = rec.ring;
    j["size"] = rec.elements.size();
    j["elements"] = rec.elements;
    j["verified"] = rec.verified;
    return dump(j);
}

std::string aut_json(const AutRecord& rec) {
    json j;
    j["s"] = rec.s;
    j["compressed_vertices"] = rec.compressed_vertices;
    j["aut_order"] = rec.aut_order;
    j["predicted_order"] = rec.predicted;
    j["reg_order"] = rec.reg.str();
    j["full_aut_order_product"] = rec.full_product.str();
    j["lemma45_pass"] = rec.stabilization_all;
    j["lemma46_pass"] = rec.pairing_all;
    return dump(j);
}

std::string verify_json(const VerifyReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json e;
        e["id"] = c.id;
        e["claim"] = c.claim;
        e["status"] = c.status;
        e["measured"] = c.measured;
        e["expected"] = c.expected;
        e["elapsed_ms"] = c.elapsed_ms;
        checks.push_back(std::move(e));
    }
    json j;
    j["checks"] = std::move(checks);
    j["all_pass"] = rep.all_pass;
    j["total_ms"] = rep.total_ms;
    return dump(j);
}

std::string verify_text(const VerifyReport& rep) {
    std::ostringstream os;
    size_t width = 0;
    for (const auto& c : rep.checks) width = std::max(width, c.id.size());
    uint64_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : rep.checks) {
        std::string tag = c.status == "pass"      ? "PASS"
                          : c.status == "skipped" ? "SKIP"
                                                  : "FAIL";
        (c.status == "pass" ? passed : c.status == "skipped" ? skipped : failed)
            += 1;
        os << "[" << tag << "] " << c.id
           << std::string(width - c.id.size() + 2, ' ') << c.claim << "\n";
        if (c.status == "fail")
            os << "       measured: " << c.measured
               << "\n       expected: " << c.expected << "\n";
    }
    os << passed << " passed, " << failed << " failed, " << skipped
       << " skipped in " << rep.total_ms << " ms\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) throw io_error("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out.good()) throw io_error("write failed: " + path);
}

} // namespace lzdg
