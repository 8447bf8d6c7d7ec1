// mdep: command-line front end over the C API.
//
// Exit codes: 0 success (or degenerate verdict), 10 nondegenerate verdict,
// 2 usage error, 3 resource limit, 4 any other failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdep/mdep.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitFailure = 4;

struct Flags {
    std::string input;
    std::string factor;
    std::uint64_t seed = 20240601;
    std::size_t reps = 0;
    std::vector<std::size_t> n;
    std::string n_list;
    double tolerance = 1e-9;
    std::string format = "json";
    unsigned workers = 0;
    long truncate = -1;
    std::vector<std::string> trees;
    std::vector<double> coefs;
    std::string offspring;
    bool certificate = false;
    std::size_t budget = 0;
    std::string output;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--seed", f.seed, "Root seed")->capture_default_str();
    sub->add_option("--reps", f.reps, "Monte Carlo replicas (0 = command default)");
    sub->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
    sub->add_option("-o,--output", f.output, "Write the report to a file instead of stdout");
}

void add_factor(CLI::App* sub, Flags& f) {
    auto* in = sub->add_option("--input", f.input, "Factor file (JSON)");
    auto* cat = sub->add_option("--factor", f.factor, "Catalog factor: identity, difference, product, rn-example, bst:<code>");
    in->excludes(cat);
}

void add_lengths(CLI::App* sub, Flags& f) {
    sub->add_option("--n", f.n, "Path length (repeatable)");
    sub->add_option("--n-list", f.n_list, "Comma-separated path lengths");
}

void add_trees(CLI::App* sub, Flags& f, const char* help) {
    sub->add_option("--tree", f.trees, help);
    sub->add_option("--coef", f.coefs, "Coefficient a_j of the j-th --tree (default 1)");
}

std::vector<std::size_t> lengths(const Flags& f) {
    std::vector<std::size_t> out = f.n;
    std::stringstream ss(f.n_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(item, &pos);
        if (item.find_first_not_of(" \t", pos) != std::string::npos || v == 0) {
            throw CLI::ValidationError("--n-list", "'" + item + "' is not a positive integer");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::string config_json(const std::string& command, const Flags& f) {
    nlohmann::json j;
    j["command"] = command;
    if (!f.input.empty()) j["input"] = f.input;
    if (!f.factor.empty()) j["factor"] = f.factor;
    j["seed"] = f.seed;
    j["reps"] = f.reps;
    j["n"] = lengths(f);
    j["tolerance"] = f.tolerance;
    j["format"] = f.format;
    j["workers"] = f.workers;
    if (f.truncate >= 0) j["truncate"] = f.truncate;
    j["trees"] = f.trees;
    j["coefs"] = f.coefs;
    if (!f.offspring.empty()) j["offspring"] = f.offspring;
    j["certificate"] = f.certificate;
    if (f.budget > 0) j["budget"] = f.budget;
    return j.dump();
}

int exit_code(mdep_status s) {
    switch (s) {
        case MDEP_OK: return 0;
        case MDEP_E_INVALID_ARGUMENT: return kExitUsage;
        case MDEP_E_RESOURCE: return kExitResource;
        default: return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analyze stationary m-dependent block factors and fringe-subtree counts"};
    app.set_version_flag("--version", std::string(mdep_version()));
    app.require_subcommand(1);
    Flags f;

    auto* analyze = app.add_subcommand("analyze", "Moments, sigma^2 and Var(S_n) of a factor");
    add_factor(analyze, f);
    add_lengths(analyze, f);
    analyze->add_option("--tolerance", f.tolerance, "Zero tolerance for sigma^2")->capture_default_str();
    add_common(analyze, f);

    auto* decompose = app.add_subcommand("decompose", "Coboundary decomposition or nondegeneracy witness");
    add_factor(decompose, f);
    decompose->add_option("--tolerance", f.tolerance, "Edge consistency tolerance")->capture_default_str();
    add_common(decompose, f);

    auto* clt = app.add_subcommand("clt", "Normality diagnostics of S_n by simulation");
    add_factor(clt, f);
    add_lengths(clt, f);
    add_common(clt, f);

    auto* bst = app.add_subcommand("bst", "Fringe-subtree densities in random binary search trees");
    add_trees(bst, f, "Binary tree as a 1/0 preorder code, e.g. 100 (repeatable)");
    add_lengths(bst, f);
    add_common(bst, f);

    auto* gw = app.add_subcommand("gw", "Fringe-subtree densities in conditioned Galton-Watson trees");
    add_trees(gw, f, "Ordered tree as a degree list, e.g. 2,0,0 (repeatable)");
    gw->add_option("--offspring", f.offspring, "poisson1, geom-half, a JSON law or a file");
    gw->add_option("--truncate", f.truncate, "Truncation point for exact computations (0 = none)");
    gw->add_flag("--certificate", f.certificate, "Include the positivity certificate");
    gw->add_option("--budget", f.budget, "Rejected sequences allowed per conditioned tree");
    add_lengths(gw, f);
    add_common(gw, f);

    auto* witness = app.add_subcommand("witness", "Certificate that sigma^2 > 0 (or the decomposition)");
    add_factor(witness, f);
    add_trees(witness, f, "Tree of the statistic: binary code, or degree list with --offspring");
    witness->add_option("--offspring", f.offspring, "Offspring law; selects the Galton-Watson certificate");
    witness->add_option("--truncate", f.truncate, "Truncation point for exact computations");
    witness->add_option("--tolerance", f.tolerance, "Edge consistency tolerance")->capture_default_str();
    add_lengths(witness, f);
    add_common(witness, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    std::string config;
    try {
        config = config_json(app.get_subcommands().front()->get_name(), f);
    } catch (const std::exception& e) {
        std::cerr << "mdep: " << e.what() << "\n";
        return kExitUsage;
    }

    char* report = nullptr;
    int verdict = 0;
    const mdep_status s = mdep_run(config.c_str(), &report, &verdict);
    if (s != MDEP_OK) {
        std::cerr << "mdep: " << mdep_status_name(s) << " error: " << mdep_last_error() << "\n";
        return exit_code(s);
    }
    if (f.output.empty()) {
        std::fwrite(report, 1, std::char_traits<char>::length(report), stdout);
    } else {
        std::ofstream out(f.output, std::ios::binary);
        out << report;
        if (!out) {
            mdep_string_free(report);
            std::cerr << "mdep: cannot write " << f.output << "\n";
            return kExitFailure;
        }
    }
    mdep_string_free(report);
    return verdict;
}
