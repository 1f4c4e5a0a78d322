#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sscs/sscs.h"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInconsistent = 3;

int exit_code(sscs_status s) {
    switch (s) {
        case SSCS_OK: return 0;
        case SSCS_ERR_INTERNAL: return kExitInconsistent;
        default: return kExitInvalid;
    }
}

// Loads and parses a graph file; prints the reason on failure.
sscs_graph* load(const std::string& path, int& code) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        code = kExitInvalid;
        return nullptr;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    sscs_graph* g = nullptr;
    if (sscs_status s = sscs_graph_parse(text.data(), text.size(), &g); s != SSCS_OK) {
        std::cerr << "error: " << path << ": " << sscs_last_error() << "\n";
        code = exit_code(s);
        return nullptr;
    }
    return g;
}

sscs_mode parse_mode(const std::string& m) {
    if (m == "paper") return SSCS_MODE_PAPER;
    if (m == "exact") return SSCS_MODE_EXACT;
    return SSCS_MODE_BOTH;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controllable subspace dimensions and fixed controllable nodes of structured networks"};
    app.set_version_flag("--version", std::string(sscs_version()));
    app.require_subcommand(1);

    std::string path;
    std::string mode = "both";
    bool verify = false, dump = false, pretty = false, compact = false;
    std::uint64_t seed = 0, budget = 4000;

    auto* analyze = app.add_subcommand("analyze", "Run the full analysis and print a JSON report");
    analyze->add_option("path", path, "Graph JSON file")->required();
    analyze->add_option("--mode", mode, "Zeroability rule: paper, exact or both")
        ->check(CLI::IsMember({"paper", "exact", "both"}));
    analyze->add_flag("--verify", verify, "Cross-check every result against the oracle");
    analyze->add_option("--seed", seed, "Oracle seed");
    analyze->add_option("--budget", budget, "Oracle search budget");
    analyze->add_flag("--dump-symcm", dump, "Include the symbolic matrix dump");
    analyze->add_flag("--pretty", pretty, "Indented JSON");
    analyze->add_flag("--json", compact, "Compact JSON (default)");

    bool subgraph = false;
    auto* dot = app.add_subcommand("export-dot", "Print a layered DOT drawing");
    dot->add_option("path", path, "Graph JSON file")->required();
    dot->add_flag("--subgraph", subgraph, "Dash the edges removed for the strong dimension");
    dot->add_option("--mode", mode, "Zeroability rule: paper or exact")->check(CLI::IsMember({"paper", "exact"}));

    CLI11_PARSE(app, argc, argv);
    if (mode == "both" && dot->parsed()) mode = "exact";

    int code = 0;
    sscs_graph* g = load(path, code);
    if (!g) return code;

    if (analyze->parsed()) {
        sscs_analyze_options opts;
        sscs_analyze_options_init(&opts);
        opts.mode = parse_mode(mode);
        opts.verify = verify;
        opts.dump_symcm = dump;
        opts.pretty = pretty && !compact;
        opts.seed = seed;
        opts.budget = budget;
        char* report = nullptr;
        int consistent = 1;
        sscs_status s = sscs_analyze(g, &opts, &report, &consistent);
        if (s != SSCS_OK) {
            std::cerr << "error: " << sscs_last_error() << "\n";
            code = exit_code(s);
        } else {
            std::cout << report << "\n";
            if (!consistent) {
                std::cerr << "error: verification failed\n";
                code = kExitInconsistent;
            }
        }
        sscs_string_free(report);
    } else {
        char* text = nullptr;
        sscs_status s = sscs_export_dot(g, subgraph, parse_mode(mode), &text);
        if (s != SSCS_OK) {
            std::cerr << "error: " << sscs_last_error() << "\n";
            code = exit_code(s);
        } else {
            std::cout << text;
        }
        sscs_string_free(text);
    }
    sscs_graph_free(g);
    return code;
}
