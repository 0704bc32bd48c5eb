#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "domination.hpp"
#include "verify.hpp"
#include "zdgraph.hpp"

namespace lzdg {

// DOT of the undirected loopless vertex graph
std::string graph_dot(const ZdGraph& g);

// JSON adjacency: {"vertices": [[a,b,c,d], ...], "edges": [[u,v], ...]}
std::string graph_adj_json(const ZdGraph& g);

// CSV class table: label,size,degree,self_adjacent; degree counts
// adjacent classes in the loopless class graph
std::string class_csv(const ClassGraph& cg);

// summary statistics of a build; pass nullptr for levels that were not
// constructed
struct GraphStats {
    std::string ring;  // "quat" or "mat"
    uint64_t n = 0;    // modulus (p^s for matrices)
    uint64_t vertices = 0;
    uint64_t edges = 0;
    uint64_t twin_classes = 0;
    uint64_t compressed_vertices = 0;
    bool vertex_level = false;
};
std::string stats_json(const GraphStats& st);

struct DominationRecord {
    uint64_t n = 0;      // modulus (p^s for matrices)
    std::string ring;    // "quat" or "mat"
    uint64_t elapsed_ms = 0;
    std::vector<std::string> labels; // per instance class, witness naming
    const DominationResult* result = nullptr;
};
std::string domination_json(const DominationRecord& rec);

// constructive dominating set record
struct ConstructRecord {
    uint64_t n = 0;
    std::string ring;
    std::vector<std::string> elements;
    bool verified = false;
};
std::string construct_json(const ConstructRecord& rec);

struct AutRecord {
    unsigned s = 0;
    uint32_t compressed_vertices = 0;
    uint64_t aut_order = 0;
    uint64_t predicted = 0;
    BigInt reg;          // order of the within-class permutation group
    BigInt full_product; // reg * aut_order
    bool stabilization_all = false;
    bool pairing_all = false;
};
std::string aut_json(const AutRecord& rec);

std::string verify_json(const VerifyReport& rep);

// one line per check for terminal output, plus a summary line
std::string verify_text(const VerifyReport& rep);

// overwrite path with content; throws io_error on failure
void write_text_file(const std::string& path, const std::string& content);

} // namespace lzdg
