// Command-line front end.  Links only against the C API in tilt/tilt.h.
//
// Subcommands:
//   table   build a tilting table, print the dimension table, optionally
//           export the module JSONs plus a manifest
//   verify  run a named verification suite against a table
//   fuzz    sample modules and test membership of S (x) X in the ideal
//
// Exit codes: 0 pass, 1 suite failure, 2 configuration error, 3 fuzz
// candidates found.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tilt/tilt.h"

namespace {

constexpr int EXIT_PASS = 0;
constexpr int EXIT_FAIL = 1;
constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_CANDIDATES = 3;

struct StringOut {
    char* s = nullptr;
    ~StringOut() { tilt_string_free(s); }
};

int config_error(const std::string& what) {
    nlohmann::json j;
    j["error"] = what;
    std::cerr << j.dump() << "\n";
    return EXIT_CONFIG;
}

// Builds field + table from the common flags; returns nullptrs on error
// (after printing it).
struct TableHandle {
    tilt_field* field = nullptr;
    tilt_table* table = nullptr;
    ~TableHandle() {
        tilt_table_destroy(table);
        tilt_field_destroy(field);
    }
};

bool build_table(int p, int k, int r, const std::vector<int>& lambda, TableHandle& h) {
    if (tilt_field_create(p, k, &h.field) != TILT_OK) return false;
    const int* lam = lambda.empty() ? nullptr : lambda.data();
    if (!lambda.empty() && int(lambda.size()) != r) return false;
    if (tilt_table_create(h.field, r, lam, &h.table) != TILT_OK) return false;
    return true;
}

void emit(const std::string& line, const std::string& out_path) {
    std::cout << line << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::app);
        f << line << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic engine for restricted SL2-tilting modules over C_p^r"};
    app.require_subcommand(1);

    int p = 3, k = 0, r = 2;
    std::uint64_t seed = 0;
    int count = 100, max_dim = 40, jobs = 1;
    std::string family = "random", out_path, sink;
    std::vector<int> lambda;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "field characteristic")->check(CLI::PositiveNumber);
        cmd->add_option("--k", k, "field degree: q = p^k (default: r)");
        cmd->add_option("--r", r, "rank of E = C_p^r")->check(CLI::PositiveNumber);
        cmd->add_option("--lambda", lambda,
                        "embedding scalars as field element codes (default: automatic)");
        cmd->add_option("--out", out_path, "also append reports to this file");
    };

    CLI::App* cmd_table = app.add_subcommand("table", "build and export a tilting table");
    add_common(cmd_table);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    cmd_verify->add_option("suite", suite, "suite name")->required();
    add_common(cmd_verify);

    CLI::App* cmd_fuzz = app.add_subcommand("fuzz", "fuzz the membership conjecture");
    add_common(cmd_fuzz);
    cmd_fuzz->add_option("--seed", seed, "master seed");
    cmd_fuzz->add_option("--count", count, "number of modules");
    cmd_fuzz->add_option("--family", family, "random | loewy2 | uniserial | tensor-closure");
    cmd_fuzz->add_option("--max-dim", max_dim, "dimension cap for sampled modules");
    cmd_fuzz->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd_fuzz->add_option("--sink", sink, "directory for candidate files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_PASS : EXIT_CONFIG;
    }

    if (k == 0) k = r;
    if (!lambda.empty() && int(lambda.size()) != r)
        return config_error("--lambda needs exactly r entries");

    TableHandle h;
    if (!build_table(p, k, r, lambda, h)) return config_error(tilt_last_error());

    if (cmd_table->parsed()) {
        StringOut manifest;
        if (tilt_table_manifest_json(h.table, &manifest.s) != TILT_OK)
            return config_error(tilt_last_error());
        emit(manifest.s, out_path);
        std::string dir = out_path.empty() ? "" : out_path + ".modules";
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            for (int i = 0; i < tilt_table_size(h.table); ++i) {
                StringOut mj;
                if (tilt_table_entry_json(h.table, i, &mj.s) != TILT_OK)
                    return config_error(tilt_last_error());
                std::ofstream f(dir + "/T_" + std::to_string(i) + ".json");
                f << mj.s << "\n";
            }
        }
        return EXIT_PASS;
    }

    if (cmd_verify->parsed()) {
        StringOut diag;
        int pass = 0;
        tilt_status st = tilt_verify(h.table, suite.c_str(), &diag.s, &pass);
        if (st == TILT_ERR_INVALID) return config_error(tilt_last_error());
        if (st != TILT_OK) {
            std::cerr << tilt_last_error() << "\n";
            return EXIT_FAIL;
        }
        emit(diag.s, out_path);
        return pass ? EXIT_PASS : EXIT_FAIL;
    }

    // fuzz
    const char* env_sink = std::getenv("TILT_SINK");
    if (sink.empty() && env_sink) sink = env_sink;
    StringOut report;
    int candidates = 0;
    tilt_status st = tilt_fuzz(h.table, seed, count, family.c_str(), max_dim,
                               sink.empty() ? nullptr : sink.c_str(), jobs, &report.s,
                               &candidates);
    if (st == TILT_ERR_INVALID) return config_error(tilt_last_error());
    if (st != TILT_OK) {
        std::cerr << tilt_last_error() << "\n";
        return EXIT_FAIL;
    }
    emit(report.s, out_path);
    return candidates > 0 ? EXIT_CANDIDATES : EXIT_PASS;
}
