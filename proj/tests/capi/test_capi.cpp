#include <doctest.h>

#include <cmath>
#include <string>

#include "mdep/mdep.h"

namespace {

double product(const double* w, size_t len, void*) { return len == 2 ? w[0] * w[1] : NAN; }

struct Factor {
    mdep_factor* f = nullptr;
    ~Factor() { mdep_factor_free(f); }
};

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(mdep_status_name(MDEP_OK)) == "ok");
    CHECK(std::string(mdep_status_name(MDEP_E_PARSE)) == "parse");
    CHECK(std::string(mdep_version()) == "1.0.0");
}

TEST_CASE("factor from JSON and exact variance") {
    Factor h;
    const char* text = R"({"source": {"kind": "finite-discrete", "atoms": [{"value": 0, "p": "1/2"}, {"value": 1, "p": "1/2"}]},
                           "ell": 2, "table": [0, 0, 0, 1]})";
    REQUIRE(mdep_factor_from_json(text, &h.f) == MDEP_OK);
    CHECK(mdep_factor_ell(h.f) == 2);
    CHECK(mdep_factor_window_width(h.f) == 2);
    double s2 = 0;
    CHECK(mdep_sigma2_exact(h.f, &s2) == MDEP_OK);
    CHECK(s2 == 0.3125);
    double v = 0;
    CHECK(mdep_var_sn_exact(h.f, 3, &v) == MDEP_OK);
    CHECK(v == doctest::Approx(0.8125));
    int degenerate = -1;
    CHECK(mdep_decompose_verdict(h.f, 1e-9, &degenerate) == MDEP_OK);
    CHECK(degenerate == 0);
    const double w[] = {1, 1};
    double x = 0;
    CHECK(mdep_factor_evaluate(h.f, w, 2, &x) == MDEP_OK);
    CHECK(x == 1.0);
    CHECK(mdep_factor_evaluate(h.f, w, 1, &x) == MDEP_E_ARITY);
    CHECK(std::string(mdep_last_error()).find("window") != std::string::npos);
    const double bad[] = {1, 3};
    CHECK(mdep_factor_evaluate(h.f, bad, 2, &x) == MDEP_E_DOMAIN);
    const double left[] = {0}, right[] = {0}, ma[] = {1, 1}, mb[] = {0, 0};
    int differs = -1;
    CHECK(mdep_rc2_check(h.f, left, right, ma, mb, 2, 1e-9, &differs) == MDEP_OK);
    CHECK(differs == 1);
}

TEST_CASE("parse and argument errors") {
    mdep_factor* f = nullptr;
    CHECK(mdep_factor_from_json("{", &f) == MDEP_E_PARSE);
    CHECK(std::string(mdep_last_error()).find("line") != std::string::npos);
    CHECK(f == nullptr);
    CHECK(mdep_factor_from_json(nullptr, &f) == MDEP_E_INVALID_ARGUMENT);
    CHECK(mdep_factor_from_catalog("nope", &f) == MDEP_E_INVALID_ARGUMENT);
    CHECK(mdep_factor_from_file("/nonexistent/factor.json", &f) != MDEP_OK);
    CHECK(mdep_sigma2_exact(nullptr, nullptr) == MDEP_E_INVALID_ARGUMENT);
}

TEST_CASE("factor file and catalog") {
    Factor h;
    REQUIRE(mdep_factor_from_file(MDEP_DATA_DIR "/coboundary_bernoulli.json", &h.f) == MDEP_OK);
    int degenerate = -1;
    CHECK(mdep_decompose_verdict(h.f, 1e-9, &degenerate) == MDEP_OK);
    CHECK(degenerate == 1);
    Factor rn;
    REQUIRE(mdep_factor_from_catalog("rn-example", &rn.f) == MDEP_OK);
    CHECK(mdep_factor_ell(rn.f) == 3);
    CHECK(mdep_factor_window_width(rn.f) == 6);
    double s2 = 0;
    CHECK(mdep_sigma2_exact(rn.f, &s2) == MDEP_E_UNSUPPORTED);
    double v = 0, se = 0;
    CHECK(mdep_sigma2_mc(rn.f, 100, 400, 5, 1, &v, &se) == MDEP_OK);
    CHECK(std::abs(100 * v - 2.0) < 5 * 100 * se);
}

TEST_CASE("callback factor") {
    Factor h;
    const double values[] = {0, 1};
    const double probs[] = {0.5, 0.5};
    REQUIRE(mdep_factor_from_callback(values, probs, 2, 2, product, nullptr, &h.f) == MDEP_OK);
    double s2 = 0;
    CHECK(mdep_sigma2_exact(h.f, &s2) == MDEP_OK);
    CHECK(s2 == doctest::Approx(0.3125));
    mdep_factor* f = nullptr;
    const double bad[] = {0.5, 0.7};
    CHECK(mdep_factor_from_callback(values, bad, 2, 2, product, nullptr, &f) == MDEP_E_INVALID_ARGUMENT);
    CHECK(mdep_factor_from_callback(values, probs, 2, 2, nullptr, nullptr, &f) == MDEP_E_INVALID_ARGUMENT);
    CHECK(f == nullptr);
}

TEST_CASE("tree counts") {
    size_t count = 0;
    CHECK(mdep_bst_subtree_count(1000, "100", 1, &count) == MDEP_OK);
    CHECK(count > 250);
    CHECK(count < 420);
    CHECK(mdep_bst_subtree_count(10, "10", 1, &count) == MDEP_E_PARSE);
    CHECK(mdep_gw_subtree_count(500, "0", "poisson1", -1, 2, &count) == MDEP_OK);
    CHECK(count > 120);
    CHECK(count < 250);
    CHECK(mdep_gw_subtree_count(10, "0", R"({"p": [0.5, 0.5]})", -1, 2, &count) == MDEP_E_DOMAIN);
}

TEST_CASE("run a command") {
    char* report = nullptr;
    int verdict = -1;
    REQUIRE(mdep_run(R"({"command": "decompose", "factor": "difference"})", &report, &verdict) != MDEP_OK);
    const std::string cfg = std::string(R"({"command": "decompose", "input": ")") + MDEP_DATA_DIR + R"(/product_bernoulli.json"})";
    REQUIRE(mdep_run(cfg.c_str(), &report, &verdict) == MDEP_OK);
    CHECK(verdict == 10);
    CHECK(std::string(report).find("\"verdict\"") != std::string::npos);
    mdep_string_free(report);
    CHECK(mdep_run(R"({"command": "bogus"})", &report, &verdict) == MDEP_E_INVALID_ARGUMENT);
    CHECK(mdep_run(R"({"command": "analyze", "extra": 1})", &report, &verdict) != MDEP_OK);
}
