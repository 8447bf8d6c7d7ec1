#include "mdep/mdep.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "mdep/bst.hpp"
#include "mdep/catalog.hpp"
#include "mdep/coboundary.hpp"
#include "mdep/error.hpp"
#include "mdep/factor_io.hpp"
#include "mdep/gw.hpp"
#include "mdep/report.hpp"
#include "mdep/variance.hpp"

struct mdep_factor {
    mdep::BlockFactor factor;
};

namespace {

thread_local std::string last_error;

mdep_status status_of(mdep::ErrorKind kind) {
    switch (kind) {
        case mdep::ErrorKind::invalid_argument: return MDEP_E_INVALID_ARGUMENT;
        case mdep::ErrorKind::domain: return MDEP_E_DOMAIN;
        case mdep::ErrorKind::arity: return MDEP_E_ARITY;
        case mdep::ErrorKind::parse: return MDEP_E_PARSE;
        case mdep::ErrorKind::resource: return MDEP_E_RESOURCE;
        case mdep::ErrorKind::unsupported: return MDEP_E_UNSUPPORTED;
    }
    return MDEP_E_INTERNAL;
}

template <class F>
mdep_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return MDEP_OK;
    } catch (const mdep::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return MDEP_E_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return MDEP_E_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return MDEP_E_INTERNAL;
    }
}

void need(const void* p, const char* name) {
    if (p == nullptr) mdep::fail(mdep::ErrorKind::invalid_argument, std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

mdep_status make(mdep::BlockFactor f, mdep_factor** out) {
    *out = new mdep_factor{std::move(f)};
    return MDEP_OK;
}

}  // namespace

extern "C" {

const char* mdep_last_error(void) { return last_error.c_str(); }

const char* mdep_status_name(mdep_status status) {
    switch (status) {
        case MDEP_OK: return "ok";
        case MDEP_E_INVALID_ARGUMENT: return "invalid-argument";
        case MDEP_E_DOMAIN: return "domain";
        case MDEP_E_ARITY: return "arity";
        case MDEP_E_PARSE: return "parse";
        case MDEP_E_RESOURCE: return "resource";
        case MDEP_E_UNSUPPORTED: return "unsupported";
        case MDEP_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* mdep_version(void) { return mdep::library_version(); }

void mdep_string_free(char* s) { std::free(s); }

mdep_status mdep_factor_from_json(const char* text, mdep_factor** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        make(mdep::parse_factor(text), out);
    });
}

mdep_status mdep_factor_from_file(const char* path, mdep_factor** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        make(mdep::load_factor(path), out);
    });
}

mdep_status mdep_factor_from_catalog(const char* name, mdep_factor** out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        make(mdep::catalog_factor(name), out);
    });
}

mdep_status mdep_factor_from_callback(const double* values, const double* probs, size_t atoms, size_t ell,
                                      mdep_window_fn fn, void* user, mdep_factor** out) {
    return guarded([&] {
        need(values, "values");
        need(probs, "probs");
        need(out, "out");
        if (fn == nullptr) mdep::fail(mdep::ErrorKind::invalid_argument, "fn must not be null");
        auto source = std::make_shared<const mdep::Source>(
            mdep::Source::finite(std::span<const double>(values, atoms), std::span<const double>(probs, atoms)));
        auto f = [fn, user](std::span<const double> w) { return fn(w.data(), w.size(), user); };
        make(mdep::BlockFactor::tabulated(std::move(source), ell, f, "callback"), out);
    });
}

void mdep_factor_free(mdep_factor* factor) { delete factor; }

size_t mdep_factor_ell(const mdep_factor* factor) { return factor == nullptr ? 0 : factor->factor.ell(); }

size_t mdep_factor_window_width(const mdep_factor* factor) {
    return factor == nullptr ? 0 : factor->factor.window_width();
}

mdep_status mdep_factor_evaluate(const mdep_factor* factor, const double* window, size_t len, double* out) {
    return guarded([&] {
        need(factor, "factor");
        need(out, "out");
        if (len > 0) need(window, "window");
        *out = factor->factor.evaluate(std::span<const double>(window, len));
    });
}

mdep_status mdep_sigma2_exact(const mdep_factor* factor, double* out) {
    return guarded([&] {
        need(factor, "factor");
        need(out, "out");
        *out = mdep::exact_moments(factor->factor).sigma2;
    });
}

mdep_status mdep_var_sn_exact(const mdep_factor* factor, size_t n, double* out) {
    return guarded([&] {
        need(factor, "factor");
        need(out, "out");
        *out = mdep::var_sn_exact(factor->factor, n);
    });
}

mdep_status mdep_sigma2_mc(const mdep_factor* factor, size_t n, size_t reps, uint64_t seed, unsigned workers,
                           double* value, double* std_error) {
    return guarded([&] {
        need(factor, "factor");
        need(value, "value");
        const mdep::McVariance mc = mdep::sigma_squared_mc(factor->factor, n, {reps, seed, workers});
        *value = mc.sigma2.value;
        if (std_error != nullptr) *std_error = mc.sigma2.std_error;
    });
}

mdep_status mdep_decompose_verdict(const mdep_factor* factor, double tolerance, int* degenerate) {
    return guarded([&] {
        need(factor, "factor");
        need(degenerate, "degenerate");
        mdep::DecomposeOptions opts;
        opts.tolerance = tolerance;
        *degenerate = mdep::coboundary_decompose(factor->factor, opts).degenerate() ? 1 : 0;
    });
}

mdep_status mdep_rc2_check(const mdep_factor* factor, const double* left, const double* right,
                           const double* middle_a, const double* middle_b, size_t middle_len, double tolerance,
                           int* differs) {
    return guarded([&] {
        need(factor, "factor");
        need(differs, "differs");
        need(middle_a, "middle_a");
        need(middle_b, "middle_b");
        const std::size_t b = (factor->factor.ell() - 1) * factor->factor.source().dimension();
        if (b > 0) {
            need(left, "left");
            need(right, "right");
        }
        *differs = mdep::rc2_witness_check(factor->factor, std::span<const double>(left, b),
                                           std::span<const double>(right, b),
                                           std::span<const double>(middle_a, middle_len),
                                           std::span<const double>(middle_b, middle_len), tolerance)
                           .differs
                       ? 1
                       : 0;
    });
}

mdep_status mdep_bst_subtree_count(size_t n, const char* tree, uint64_t seed, size_t* out) {
    return guarded([&] {
        need(tree, "tree");
        need(out, "out");
        *out = mdep::bst_subtree_count(n, mdep::BinaryTree::parse(tree), seed);
    });
}

mdep_status mdep_gw_subtree_count(size_t n, const char* tree, const char* offspring, long truncation, uint64_t seed,
                                  size_t* out) {
    return guarded([&] {
        need(tree, "tree");
        need(offspring, "offspring");
        need(out, "out");
        std::optional<std::size_t> t;
        if (truncation >= 0) t = static_cast<std::size_t>(truncation);
        const auto off = mdep::OffspringDistribution::parse(offspring, t);
        *out = mdep::gw_subtree_count(n, mdep::OrderedTree::parse(tree), off, seed);
    });
}

mdep_status mdep_run(const char* config_json, char** report, int* verdict) {
    return guarded([&] {
        need(config_json, "config_json");
        need(report, "report");
        const mdep::RunResult r = mdep::run_command(mdep::parse_run_config(config_json));
        *report = copy_string(r.report);
        if (verdict != nullptr) *verdict = r.verdict;
    });
}

}  // extern "C"
