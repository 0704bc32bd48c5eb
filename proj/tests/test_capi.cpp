#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lzdg/lzdg.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json parse_and_free(lzdg_json_t* j) {
    REQUIRE(j != nullptr);
    json out = json::parse(lzdg_json_str(j));
    lzdg_json_free(j);
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lzdg_capi_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("version and error strings") {
    REQUIRE(lzdg_version() != nullptr);
    CHECK(std::string(lzdg_version()).find('.') != std::string::npos);
    CHECK(std::string(lzdg_strerror(LZDG_OK)) != "");
    CHECK(std::string(lzdg_strerror(LZDG_E_CHECK)) != "");
    CHECK(std::string(lzdg_strerror(LZDG_E_INVALID)) != "");
    CHECK(std::string(lzdg_strerror(LZDG_E_RESOURCE)) != "");
    CHECK(std::string(lzdg_strerror(LZDG_E_IO)) != "");
    CHECK(std::string(lzdg_strerror(LZDG_E_INTERNAL)) != "");
    CHECK(lzdg_strerror(999) != nullptr);
}

TEST_CASE("graph lifecycle and stats") {
    lzdg_graph_t* g = nullptr;
    REQUIRE(lzdg_graph_build_quat(4, 0, 0, &g) == LZDG_OK);
    REQUIRE(g != nullptr);

    uint64_t v = 0, e = 0, c = 0;
    CHECK(lzdg_graph_vertices(g, &v) == LZDG_OK);
    CHECK(lzdg_graph_edges(g, &e) == LZDG_OK);
    CHECK(lzdg_graph_classes(g, &c) == LZDG_OK);
    CHECK(v == 127);
    CHECK(c == 10);
    CHECK(e > 0);

    lzdg_json_t* sj = nullptr;
    REQUIRE(lzdg_graph_stats_json(g, &sj) == LZDG_OK);
    json st = parse_and_free(sj);
    CHECK(st["ring"] == "quat");
    CHECK(st["n"] == 4);
    CHECK(st["vertices"] == 127);
    CHECK(st["edges"] == e);
    CHECK(st["twin_classes"] == 10);
    CHECK(st["compressed_vertices"] == 10);
    CHECK(st["vertex_level"] == true);

    lzdg_graph_free(g);
    lzdg_graph_free(nullptr); // must be a safe no-op
    lzdg_json_free(nullptr);
}

TEST_CASE("null arguments are rejected") {
    CHECK(lzdg_graph_build_quat(4, 0, 0, nullptr) == LZDG_E_INVALID);
    CHECK(lzdg_graph_vertices(nullptr, nullptr) == LZDG_E_INVALID);
    lzdg_json_t* out = nullptr;
    CHECK(lzdg_graph_stats_json(nullptr, &out) == LZDG_E_INVALID);
    CHECK(std::string(lzdg_last_error()) != "");
    CHECK(lzdg_verify(1, 0, 1, 0, nullptr) == LZDG_E_INVALID);
    // invalid ring parameters
    lzdg_graph_t* g = nullptr;
    CHECK(lzdg_graph_build_quat(0, 0, 0, &g) == LZDG_E_INVALID);
    CHECK(lzdg_graph_build_mat(4, 1, 0, 0, &g) == LZDG_E_INVALID);
}

TEST_CASE("element cap guards construction") {
    lzdg_graph_t* g = nullptr;
    CHECK(lzdg_graph_build_quat(16, 0, 1000, &g) == LZDG_E_RESOURCE);
    CHECK(g == nullptr);
    CHECK(std::string(lzdg_last_error()).find("cap") != std::string::npos);
}

TEST_CASE("graph exports write the three formats") {
    TempDir tmp;
    lzdg_graph_t* g = nullptr;
    REQUIRE(lzdg_graph_build_quat(4, 0, 0, &g) == LZDG_OK);

    fs::path dotp = tmp.path / "g.dot";
    fs::path jsonp = tmp.path / "g.json";
    fs::path csvp = tmp.path / "g.csv";
    CHECK(lzdg_graph_export(g, "dot", dotp.string().c_str()) == LZDG_OK);
    CHECK(lzdg_graph_export(g, "json", jsonp.string().c_str()) == LZDG_OK);
    CHECK(lzdg_graph_export(g, "csv", csvp.string().c_str()) == LZDG_OK);

    std::string dot = slurp(dotp);
    CHECK(dot.rfind("graph zdg {", 0) == 0);
    CHECK(dot.find("--") != std::string::npos);

    json adj = json::parse(slurp(jsonp));
    CHECK(adj["vertices"].size() == 127);

    std::string csv = slurp(csvp);
    CHECK(csv.rfind("label,size,degree,self_adjacent", 0) == 0);

    CHECK(lzdg_graph_export(g, "xml", dotp.string().c_str()) ==
          LZDG_E_INVALID);
    CHECK(lzdg_graph_export(g, "dot", "/nonexistent_dir_zz/x.dot") ==
          LZDG_E_IO);
    lzdg_graph_free(g);
}

TEST_CASE("class-level bundles refuse vertex-level exports") {
    // 16^4 = 65536 exceeds the pairwise cap but fits the element cap,
    // so the bundle is class-level only
    TempDir tmp;
    lzdg_graph_t* g = nullptr;
    REQUIRE(lzdg_graph_build_quat(16, 0, 0, &g) == LZDG_OK);
    uint64_t v = 0;
    CHECK(lzdg_graph_vertices(g, &v) == LZDG_OK);
    CHECK(v == 32767);

    lzdg_json_t* sj = nullptr;
    REQUIRE(lzdg_graph_stats_json(g, &sj) == LZDG_OK);
    json st = parse_and_free(sj);
    CHECK(st["vertex_level"] == false);

    fs::path p = tmp.path / "g.dot";
    CHECK(lzdg_graph_export(g, "dot", p.string().c_str()) == LZDG_E_RESOURCE);
    CHECK(lzdg_graph_export(g, "json", p.string().c_str()) == LZDG_E_RESOURCE);
    fs::path csvp = tmp.path / "g.csv";
    CHECK(lzdg_graph_export(g, "csv", csvp.string().c_str()) == LZDG_OK);
    lzdg_graph_free(g);
}

TEST_CASE("exact domination through the C interface") {
    lzdg_json_t* out = nullptr;
    REQUIRE(lzdg_domination_exact_quat(6, 0, 0, &out) == LZDG_OK);
    json d = parse_and_free(out);
    CHECK(d["ring"] == "quat");
    CHECK(d["n"] == 6);
    CHECK(d["gamma"] == 5);
    CHECK(d["optimal"] == true);
    uint64_t selected = 0;
    for (const auto& w : d["witness"]) selected += w[1].get<uint64_t>();
    CHECK(selected == 5);

    out = nullptr;
    REQUIRE(lzdg_domination_exact_mat(3, 1, 0, 0, &out) == LZDG_OK);
    json m = parse_and_free(out);
    CHECK(m["ring"] == "mat");
    CHECK(m["gamma"] == 4);
    CHECK(m["optimal"] == true);

    // 682 classes exceed the default class cap
    out = nullptr;
    CHECK(lzdg_domination_exact_quat(15, 0, 0, &out) == LZDG_E_RESOURCE);
    // and succeed with a raised cap
    REQUIRE(lzdg_domination_exact_quat(15, 1024, 0, &out) == LZDG_OK);
    json d15 = parse_and_free(out);
    CHECK(d15["gamma"] == 10);
}

TEST_CASE("constructive sets through the C interface") {
    lzdg_json_t* out = nullptr;
    REQUIRE(lzdg_domination_construct_mat(3, 1, &out) == LZDG_OK);
    json m = parse_and_free(out);
    CHECK(m["size"] == 4);
    CHECK(m["verified"] == true);
    CHECK(m["elements"].size() == 4);

    out = nullptr;
    REQUIRE(lzdg_domination_construct_quat(6, &out) == LZDG_OK);
    json q = parse_and_free(out);
    CHECK(q["size"] == 5);
    CHECK(q["verified"] == true);
}

TEST_CASE("automorphism summary through the C interface") {
    lzdg_json_t* out = nullptr;
    REQUIRE(lzdg_aut_summary(2, &out) == LZDG_OK);
    json a = parse_and_free(out);
    CHECK(a["s"] == 2);
    CHECK(a["compressed_vertices"] == 10);
    CHECK(a["aut_order"] == 12);
    CHECK(a["predicted_order"] == 12);
    CHECK(a["lemma45_pass"] == true);
    CHECK(a["lemma46_pass"] == true);
    // the two large orders travel as decimal strings
    CHECK(a["reg_order"].is_string());
    CHECK(a["full_aut_order_product"].is_string());
}

TEST_CASE("verification through the C interface") {
    lzdg_json_t* out = nullptr;
    lzdg_rc rc = lzdg_verify(1, 0, 12345, 0, &out);
    json rep = parse_and_free(out);
    CHECK(rc == LZDG_OK);
    CHECK(rep["all_pass"] == true);
    CHECK(rep["checks"].size() == 31);

    // injected failure: the report is still produced, the code flips
    out = nullptr;
    rc = lzdg_verify(1, 0, 12345, 1, &out);
    json bad = parse_and_free(out);
    CHECK(rc == LZDG_E_CHECK);
    CHECK(bad["all_pass"] == false);
    bool saw_fail = false;
    for (const auto& c : bad["checks"])
        if (c["id"] == "vertex-counts") saw_fail = c["status"] == "fail";
    CHECK(saw_fail);
}
