// command line front end; talks to the library through the C API only

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lzdg/lzdg.h"

namespace {

struct Options {
    std::string ring = "quat";
    uint64_t n = 0;
    uint64_t p = 0;
    uint64_t s = 0;
    bool exact = false;
    bool construct = false;
    std::vector<std::string> exports;
    uint64_t threads = 0;
    std::string out_dir;
    uint64_t max_s = 5;
    uint64_t seed = 12345;
    uint64_t class_cap = 0; // 0 = library default
    bool inject_failure = false;
};

int exit_code(lzdg_rc rc) {
    switch (rc) {
    case LZDG_OK: return 0;
    case LZDG_E_CHECK: return 1;
    case LZDG_E_INVALID: return 2;
    case LZDG_E_RESOURCE: return 3;
    default: return 4;
    }
}

int report_failure(lzdg_rc rc) {
    std::cerr << "error: " << lzdg_strerror(rc);
    std::string detail = lzdg_last_error();
    if (!detail.empty()) std::cerr << ": " << detail;
    std::cerr << "\n";
    return exit_code(rc);
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

// key=value configuration; '#' starts a comment; unknown keys rejected
bool load_config(const std::string& path, Options& opt, std::string& err) {
    std::ifstream in(path);
    if (!in.good()) {
        err = "cannot read config file: " + path;
        return false;
    }
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(),
                   std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(),
                   line.end());
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            err = "config line " + std::to_string(lineno) +
                  " is not key=value";
            return false;
        }
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [&](std::string& s) {
            s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
            s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(),
                    s.end());
        };
        strip(key);
        strip(val);
        auto as_u64 = [&](uint64_t& slot) {
            try {
                size_t pos = 0;
                slot = std::stoull(val, &pos);
                if (pos != val.size()) throw std::invalid_argument(val);
                return true;
            } catch (const std::exception&) {
                err = "config key " + key + " needs an unsigned integer";
                return false;
            }
        };
        auto as_bool = [&](bool& slot) {
            if (val == "1" || val == "true") {
                slot = true;
                return true;
            }
            if (val == "0" || val == "false") {
                slot = false;
                return true;
            }
            err = "config key " + key + " needs a boolean";
            return false;
        };
        bool ok = true;
        if (key == "ring") opt.ring = val;
        else if (key == "n") ok = as_u64(opt.n);
        else if (key == "p") ok = as_u64(opt.p);
        else if (key == "s") ok = as_u64(opt.s);
        else if (key == "threads") ok = as_u64(opt.threads);
        else if (key == "seed") ok = as_u64(opt.seed);
        else if (key == "max_s") ok = as_u64(opt.max_s);
        else if (key == "class_cap") ok = as_u64(opt.class_cap);
        else if (key == "out") opt.out_dir = val;
        else if (key == "exact") ok = as_bool(opt.exact);
        else if (key == "construct") ok = as_bool(opt.construct);
        else if (key == "export") {
            opt.exports.clear();
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) opt.exports.push_back(item);
        } else {
            err = "unknown config key: " + key;
            return false;
        }
        if (!ok) return false;
    }
    return true;
}

std::filesystem::path resolve_out_dir(const Options& opt) {
    if (!opt.out_dir.empty()) return opt.out_dir;
    if (const char* env = std::getenv("LZDG_OUT"); env && *env) return env;
    return ".";
}

bool write_file(const std::filesystem::path& path, const std::string& text,
                std::string& err) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) {
        err = "cannot write " + path.string();
        return false;
    }
    out << text;
    out.flush();
    if (!out.good()) {
        err = "write failed for " + path.string();
        return false;
    }
    return true;
}

// writes the collected files plus a manifest listing them
int persist(const Options& opt, const std::string& command,
            const std::vector<std::pair<std::string, std::string>>& files) {
    std::filesystem::path dir = resolve_out_dir(opt);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << dir << "\n";
        return 4;
    }
    nlohmann::json names = nlohmann::json::array();
    std::string err;
    for (const auto& [name, text] : files) {
        if (!write_file(dir / name, text, err)) {
            std::cerr << "error: " << err << "\n";
            return 4;
        }
        names.push_back(name);
    }
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["files"] = std::move(names);
    if (!write_file(dir / "manifest.json", manifest.dump(2) + "\n", err)) {
        std::cerr << "error: " << err << "\n";
        return 4;
    }
    return 0;
}

struct JsonHandle {
    lzdg_json_t* j = nullptr;
    ~JsonHandle() { lzdg_json_free(j); }
    std::string str() const { return lzdg_json_str(j); }
};

struct GraphHandle {
    lzdg_graph_t* g = nullptr;
    ~GraphHandle() { lzdg_graph_free(g); }
};

int validate_ring(const Options& opt) {
    if (opt.ring != "quat" && opt.ring != "mat")
        return usage_error("--ring must be quat or mat");
    if (opt.ring == "quat" && opt.n == 0)
        return usage_error("--ring quat needs --n");
    if (opt.ring == "mat" && (opt.p == 0 || opt.s == 0))
        return usage_error("--ring mat needs --p and --s");
    return 0;
}

int cmd_build(const Options& opt) {
    if (int rc = validate_ring(opt)) return rc;
    for (const std::string& f : opt.exports)
        if (f != "dot" && f != "json" && f != "csv")
            return usage_error("unknown export format: " + f);

    GraphHandle graph;
    lzdg_rc rc =
        opt.ring == "quat"
            ? lzdg_graph_build_quat(opt.n, uint32_t(opt.threads), 0, &graph.g)
            : lzdg_graph_build_mat(uint32_t(opt.p), uint32_t(opt.s),
                                   uint32_t(opt.threads), 0, &graph.g);
    if (rc != LZDG_OK) return report_failure(rc);

    JsonHandle stats;
    rc = lzdg_graph_stats_json(graph.g, &stats.j);
    if (rc != LZDG_OK) return report_failure(rc);

    std::filesystem::path dir = resolve_out_dir(opt);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << dir << "\n";
        return 4;
    }
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("stats.json", stats.str());
    for (const std::string& f : opt.exports) {
        std::string name = f == "csv" ? "classes.csv" : "graph." + f;
        rc = lzdg_graph_export(graph.g, f.c_str(), (dir / name).c_str());
        if (rc != LZDG_OK) return report_failure(rc);
    }
    // exports were written directly; record them in the manifest
    nlohmann::json names = nlohmann::json::array();
    std::string err;
    if (!write_file(dir / "stats.json", stats.str(), err)) {
        std::cerr << "error: " << err << "\n";
        return 4;
    }
    names.push_back("stats.json");
    for (const std::string& f : opt.exports)
        names.push_back(f == "csv" ? "classes.csv" : "graph." + f);
    nlohmann::json manifest;
    manifest["command"] = "build";
    manifest["files"] = std::move(names);
    if (!write_file(dir / "manifest.json", manifest.dump(2) + "\n", err)) {
        std::cerr << "error: " << err << "\n";
        return 4;
    }
    std::cout << stats.str();
    return 0;
}

int cmd_domination(const Options& opt) {
    if (int rc = validate_ring(opt)) return rc;
    if (opt.exact && opt.construct)
        return usage_error("--exact and --construct are mutually exclusive");

    JsonHandle result;
    lzdg_rc rc;
    std::string file_name;
    if (opt.construct) {
        file_name = "construct.json";
        rc = opt.ring == "quat"
                 ? lzdg_domination_construct_quat(opt.n, &result.j)
                 : lzdg_domination_construct_mat(uint32_t(opt.p),
                                                 uint32_t(opt.s), &result.j);
    } else {
        file_name = "domination.json";
        rc = opt.ring == "quat"
                 ? lzdg_domination_exact_quat(opt.n, uint32_t(opt.class_cap),
                                              uint32_t(opt.threads), &result.j)
                 : lzdg_domination_exact_mat(
                       uint32_t(opt.p), uint32_t(opt.s),
                       uint32_t(opt.class_cap), uint32_t(opt.threads),
                       &result.j);
    }
    if (rc != LZDG_OK && result.j == nullptr) return report_failure(rc);

    if (int prc = persist(opt, "domination", {{file_name, result.str()}}))
        return prc;
    std::cout << result.str();
    if (rc != LZDG_OK) return report_failure(rc);
    return 0;
}

int cmd_aut(const Options& opt) {
    if (opt.s == 0) return usage_error("aut needs --s");
    JsonHandle result;
    lzdg_rc rc = lzdg_aut_summary(uint32_t(opt.s), &result.j);
    if (rc != LZDG_OK) return report_failure(rc);
    if (int prc = persist(opt, "aut", {{"aut.json", result.str()}}))
        return prc;
    std::cout << result.str();
    return 0;
}

void print_verify_report(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    size_t width = 0;
    for (const auto& c : j["checks"])
        width = std::max(width, c["id"].get<std::string>().size());
    uint64_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : j["checks"]) {
        std::string status = c["status"].get<std::string>();
        std::string id = c["id"].get<std::string>();
        std::string tag = status == "pass"      ? "PASS"
                          : status == "skipped" ? "SKIP"
                                                : "FAIL";
        (status == "pass" ? passed : status == "skipped" ? skipped : failed) +=
            1;
        std::cout << "[" << tag << "] " << id
                  << std::string(width - id.size() + 2, ' ')
                  << c["claim"].get<std::string>() << "\n";
        if (status == "fail")
            std::cout << "       measured: "
                      << c["measured"].get<std::string>()
                      << "\n       expected: "
                      << c["expected"].get<std::string>() << "\n";
    }
    std::cout << passed << " passed, " << failed << " failed, " << skipped
              << " skipped in " << j["total_ms"].get<uint64_t>() << " ms\n";
}

int cmd_verify(const Options& opt) {
    JsonHandle result;
    lzdg_rc rc = lzdg_verify(uint32_t(opt.max_s), uint32_t(opt.threads),
                             opt.seed, opt.inject_failure ? 1 : 0, &result.j);
    if (result.j == nullptr) return report_failure(rc);
    print_verify_report(result.str());
    if (int prc = persist(opt, "verify", {{"verify.json", result.str()}}))
        return prc;
    if (rc != LZDG_OK) return exit_code(rc);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;

    // the config file seeds defaults, explicit flags override it
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            config_path = arg.substr(9);
    }
    if (!config_path.empty()) {
        std::string err;
        if (!load_config(config_path, opt, err)) return usage_error(err);
    }

    CLI::App app{"zero-divisor graphs of quaternion and 2x2 matrix rings"};
    app.require_subcommand(1);
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--threads", opt.threads,
                   "worker threads (0 = hardware count)");
    app.add_option("--out", opt.out_dir,
                   "output directory (default $LZDG_OUT or .)");
    app.add_option("--seed", opt.seed, "seed for sampled checks");

    auto add_ring_options = [&](CLI::App* sub) {
        sub->add_option("--ring", opt.ring, "ring family: quat or mat");
        sub->add_option("--n", opt.n, "modulus for the quaternion ring");
        sub->add_option("--p", opt.p, "prime for the matrix ring");
        sub->add_option("--s", opt.s, "prime-power exponent");
    };

    CLI::App* build = app.add_subcommand("build", "construct and export a graph");
    add_ring_options(build);
    build->add_option("--export", opt.exports, "formats: dot, json, csv")
        ->delimiter(',');

    CLI::App* domination =
        app.add_subcommand("domination", "minimum dominating set");
    add_ring_options(domination);
    domination->add_flag("--exact", opt.exact, "exact solver (default)");
    domination->add_flag("--construct", opt.construct,
                         "closed-form constructive set");
    domination->add_option("--class-cap", opt.class_cap,
                           "largest compressed instance accepted");

    CLI::App* aut =
        app.add_subcommand("aut", "automorphism group of the compressed graph");
    aut->add_option("--s", opt.s, "2-power exponent");

    CLI::App* verify = app.add_subcommand("verify", "run the checking suite");
    verify->add_option("--max-s", opt.max_s, "deepest 2-power exponent");
    verify->add_flag("--inject-failure", opt.inject_failure,
                     "negative control: corrupt one expected value")
        ->group("");

    for (CLI::App* sub : {build, domination, aut, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    if (build->parsed()) return cmd_build(opt);
    if (domination->parsed()) return cmd_domination(opt);
    if (aut->parsed()) return cmd_aut(opt);
    if (verify->parsed()) return cmd_verify(opt);
    return usage_error("no subcommand given");
}
