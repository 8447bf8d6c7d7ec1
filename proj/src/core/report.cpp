#include "mdep/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mdep/bst.hpp"
#include "mdep/catalog.hpp"
#include "mdep/clt.hpp"
#include "mdep/coboundary.hpp"
#include "mdep/error.hpp"
#include "mdep/factor_io.hpp"
#include "mdep/gw.hpp"

namespace mdep {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultReps = 1000;
constexpr std::size_t kDefaultGwReps = 200;
constexpr std::size_t kDefaultTreeN = 1000;

Json header(const RunConfig& c) {
    return Json{{"command", c.command}, {"version", library_version()}, {"seed", c.seed}};
}

BlockFactor load(const RunConfig& c) {
    if (c.input) return load_factor(*c.input);
    if (c.factor) return catalog_factor(*c.factor);
    fail(ErrorKind::invalid_argument, c.command + " needs --input <file> or --factor <catalog name>");
}

Json describe_factor(const BlockFactor& f) {
    return Json{{"name", f.traits().name}, {"ell", f.ell()}, {"m", f.dependence()}, {"source", f.source().describe()}};
}

Json estimate(const Estimate& e) { return Json{{"value", e.value}, {"std_error", e.std_error}}; }

Json rationals(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const Rational& r : v) out.push_back(to_string(r));
    return out;
}

Json values_json(const std::vector<double>& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(x);
    return out;
}

std::size_t reps_or(const RunConfig& c, std::size_t fallback) { return c.reps == 0 ? fallback : c.reps; }

/// Exact Var(S_n) = n Var + 2 sum_{k<=min(n-1,m)} (n-k) Cov_k.
Rational exact_var_sn(const std::vector<Rational>& exact, std::size_t n) {
    const std::size_t m = exact.size() - 3;
    Rational v = Rational(static_cast<long long>(n)) * exact[1];
    for (std::size_t k = 1; k <= m && k < n; ++k) v += 2 * Rational(static_cast<long long>(n - k)) * exact[1 + k];
    return v;
}

RunResult cmd_analyze(const RunConfig& c) {
    const BlockFactor f = load(c);
    Json j = header(c);
    j["factor"] = describe_factor(f);
    Json rows = Json::array();
    if (f.source().is_finite()) {
        const MomentSummary ms = exact_moments(f, {.mode = ArithmeticMode::automatic,
                                                   .budget = kDefaultEnumerationBudget,
                                                   .tolerance = c.tolerance});
        j["mode"] = "exact";
        j["arithmetic"] = ms.rational ? "rational" : "floating";
        j["mean"] = ms.mean;
        j["variance"] = ms.variance;
        j["lag_covariances"] = values_json(ms.lag_covariances);
        j["sigma2"] = ms.sigma2;
        j["sigma2_raw"] = ms.sigma2_raw;
        j["degenerate"] = ms.degenerate();
        if (ms.exact) {
            const auto& e = *ms.exact;
            j["exact"] = Json{{"mean", to_string(e[0])},
                              {"variance", to_string(e[1])},
                              {"lag_covariances", rationals({e.begin() + 2, e.end() - 1})},
                              {"sigma2", to_string(e.back())}};
        }
        for (std::size_t n : c.n) {
            require(n >= 1, "n must be at least 1");
            Json row{{"n", n}, {"var_sn", var_sn_from_moments(ms, n)}};
            if (ms.exact) row["var_sn_exact"] = to_string(exact_var_sn(*ms.exact, n));
            rows.push_back(row);
        }
    } else {
        const std::vector<std::size_t> ns = c.n.empty() ? std::vector<std::size_t>{kDefaultTreeN} : c.n;
        const std::size_t reps = reps_or(c, kDefaultReps);
        j["mode"] = "monte-carlo";
        j["reps"] = reps;
        if (f.traits().mean) j["mean"] = *f.traits().mean;
        Estimate last;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const McVariance mc = sigma_squared_mc(f, ns[i], {reps, derive_seed(c.seed, i), c.workers});
            rows.push_back(Json{{"n", ns[i]},
                                {"sigma2", mc.sigma2.value},
                                {"sigma2_se", mc.sigma2.std_error},
                                {"var_sn", mc.var_sn.value},
                                {"var_sn_se", mc.var_sn.std_error},
                                {"mean_sn", mc.mean_sn.value},
                                {"mean_sn_se", mc.mean_sn.std_error}});
            last = mc.sigma2;
        }
        j["sigma2"] = last.value;
        j["sigma2_se"] = last.std_error;
    }
    j["rows"] = rows;
    return {j.dump(2) + "\n", 0};
}

Json decomposition_json(const BlockFactor& f, const CoboundaryResult& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["degenerate"] = r.degenerate();
    j["arithmetic"] = r.rational ? "rational" : "floating";
    j["ell"] = r.ell;
    j["alphabet"] = r.alphabet;
    j["mu"] = r.mu;
    if (r.exact_mu) j["mu_exact"] = to_string(*r.exact_mu);
    j["max_residual"] = r.max_residual;
    Json g = Json::array();
    for (std::size_t code = 0; code < r.g.size(); ++code) {
        Json entry{{"window", values_json(window_values(f.source(), code, r.ell - 1))}, {"value", r.g[code]}};
        if (r.exact_g) entry["exact"] = to_string((*r.exact_g)[code]);
        g.push_back(entry);
    }
    j["g"] = g;
    Json walk = Json::array();
    for (std::size_t code : r.witness) walk.push_back(values_json(window_values(f.source(), code, r.ell)));
    Json w{{"windows", walk}, {"weight", r.witness_weight}};
    if (r.exact_witness_weight) w["weight_exact"] = to_string(*r.exact_witness_weight);
    j["witness"] = r.degenerate() ? Json(nullptr) : w;
    return j;
}

RunResult cmd_decompose(const RunConfig& c) {
    const BlockFactor f = load(c);
    DecomposeOptions opts;
    opts.tolerance = c.tolerance;
    const CoboundaryResult r = coboundary_decompose(f, opts);
    Json j = header(c);
    j["factor"] = describe_factor(f);
    j.update(decomposition_json(f, r));
    return {j.dump(2) + "\n", r.degenerate() ? 0 : kVerdictNondegenerate};
}

RunResult cmd_clt(const RunConfig& c) {
    const BlockFactor f = load(c);
    CltOptions opts;
    opts.n_list = c.n.empty() ? std::vector<std::size_t>{10, 100, 1000} : c.n;
    opts.reps = reps_or(c, kDefaultReps);
    opts.seed = c.seed;
    opts.workers = c.workers;
    const SimulationReport rep = simulate_clt(f, opts);
    Json j = header(c);
    j["factor"] = describe_factor(f);
    j["reps"] = rep.reps;
    j["alpha"] = rep.alpha;
    if (f.source().is_finite()) {
        j["reference_sigma2"] = exact_moments(f, {.mode = ArithmeticMode::floating}).sigma2;
    }
    Json rows = Json::array();
    Json hists = Json::array();
    for (const CltRow& r : rep.rows) {
        rows.push_back(Json{{"n", r.n},
                            {"seed", r.seed},
                            {"mean_sn", r.mean_sn.value},
                            {"mean_sn_se", r.mean_sn.std_error},
                            {"var_sn", r.var_sn.value},
                            {"var_sn_se", r.var_sn.std_error},
                            {"var_over_n", r.var_over_n.value},
                            {"var_over_n_se", r.var_over_n.std_error},
                            {"m2", r.m2},
                            {"m4", r.m4.value},
                            {"m4_se", r.m4.std_error},
                            {"ks_distance", r.ks_distance},
                            {"ks_threshold", r.ks_threshold},
                            {"m4_pass", r.m4_pass},
                            {"ks_pass", r.ks_pass},
                            {"pass", r.pass}});
        hists.push_back(Json{{"n", r.n},
                             {"lo", r.histogram.lo},
                             {"hi", r.histogram.hi},
                             {"counts", r.histogram.counts},
                             {"underflow", r.histogram.underflow},
                             {"overflow", r.histogram.overflow}});
    }
    j["rows"] = rows;
    j["histograms"] = hists;
    if (f.traits().name == "rn-example") {
        const std::size_t reps = std::max<std::size_t>(100 * opts.reps, 10000);
        const RnMoments m = rn_example_moments(reps, derive_seed(c.seed, 0x524e), c.workers);
        j["rn_moments"] = Json{{"reps", m.reps},
                               {"seed", m.seed},
                               {"m2", estimate(m.m2)},
                               {"m2_target", kRnSecondMoment},
                               {"m4", estimate(m.m4)},
                               {"m4_target", kRnFourthMoment},
                               {"excess", estimate(m.excess)},
                               {"m2_within_5se", std::abs(m.m2.value - kRnSecondMoment) <= 5 * m.m2.std_error},
                               {"m4_within_5se", std::abs(m.m4.value - kRnFourthMoment) <= 5 * m.m4.std_error}};
    }
    return {j.dump(2) + "\n", 0};
}

template <class Tree>
std::vector<typename LinearSubtreeStatistic<Tree>::Term> terms_of(const RunConfig& c, const std::vector<Tree>& trees) {
    if (!c.coefs.empty() && c.coefs.size() != trees.size()) {
        fail(ErrorKind::invalid_argument, "--coef must be given once per --tree");
    }
    std::vector<typename LinearSubtreeStatistic<Tree>::Term> terms;
    for (std::size_t i = 0; i < trees.size(); ++i) terms.push_back({trees[i], c.coefs.empty() ? 1.0 : c.coefs[i]});
    return terms;
}

std::vector<BinaryTree> binary_trees(const RunConfig& c) {
    std::vector<BinaryTree> out;
    for (const auto& t : c.trees.empty() ? std::vector<std::string>{"100"} : c.trees) out.push_back(BinaryTree::parse(t));
    return out;
}

std::vector<OrderedTree> ordered_trees(const RunConfig& c) {
    std::vector<OrderedTree> out;
    for (const auto& t : c.trees.empty() ? std::vector<std::string>{"0"} : c.trees) out.push_back(OrderedTree::parse(t));
    return out;
}

/// E n_T / n for a uniform random BST with n nodes.
double bst_finite_mean(const BinaryTree& t, std::size_t n) {
    const double k = static_cast<double>(t.size());
    const double nd = static_cast<double>(n);
    if (t.size() > n) return 0.0;
    if (t.size() == n) return bst_shape_probability(t) / nd;
    return 2.0 * (nd + 1.0) / ((k + 1.0) * (k + 2.0)) * bst_shape_probability(t) / nd;
}

Json covariance_json(const CovarianceEstimate& cov) {
    return Json{{"labels", cov.labels},
                {"n", cov.n},
                {"reps", cov.reps},
                {"matrix", cov.matrix},
                {"std_errors", cov.std_errors},
                {"min_eigenvalue", cov.min_eigenvalue},
                {"min_eigenvalue_ci", {cov.ci_low, cov.ci_high}},
                {"bootstrap", cov.bootstrap}};
}

RunResult cmd_bst(const RunConfig& c) {
    const auto trees = binary_trees(c);
    const std::size_t n = c.n.empty() ? kDefaultTreeN : c.n.front();
    const std::size_t reps = reps_or(c, kDefaultReps);
    const auto dens = bst_density_mc(trees, n, {reps, c.seed, c.workers});
    Json j = header(c);
    j["n"] = n;
    j["reps"] = reps;
    Json rows = Json::array();
    for (const BstDensity& d : dens) {
        rows.push_back(Json{{"tree", d.pattern.to_string()},
                            {"size", d.pattern.size()},
                            {"density", d.density.value},
                            {"density_se", d.density.std_error},
                            {"limit", d.limit},
                            {"z", d.density.std_error > 0 ? (d.density.value - d.limit) / d.density.std_error : 0.0},
                            {"finite_n_mean", bst_finite_mean(d.pattern, n)}});
    }
    j["rows"] = rows;
    if (trees.size() >= 2) {
        std::vector<BlockFactor> factors;
        for (const auto& t : trees) factors.push_back(bst_fringe_factor(t));
        j["covariance"] = covariance_json(covariance_matrix_mc(factors, n, {reps, derive_seed(c.seed, 0xc0), c.workers}));
    }
    return {j.dump(2) + "\n", 0};
}

OffspringDistribution offspring_of(const RunConfig& c) {
    std::string text = c.offspring.value_or("poisson1");
    const bool inline_spec = text.find('{') != std::string::npos || text == "poisson1" || text == "geom-half";
    if (!inline_spec) {
        std::ifstream in(text, std::ios::binary);
        if (!in) fail(ErrorKind::invalid_argument, "offspring '" + text + "' is neither a preset, JSON, nor a file");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return OffspringDistribution::parse(text, c.truncate);
}

Json offspring_json(const OffspringDistribution& off) {
    Json j{{"name", off.name()},
           {"mean", off.mean()},
           {"variance", off.variance()},
           {"approximate", off.is_approximate()}};
    if (off.is_preset()) {
        j["truncation"] = off.truncation();
        j["truncated_mass"] = off.truncated_mass();
    }
    if (off.has_finite_support()) j["p"] = off.probabilities();
    return j;
}

Json alpha_beta_json(const AlphaBeta& ab) {
    Json j{{"alpha", ab.alpha}, {"beta", ab.beta}, {"mean_f", ab.mean_f}, {"mean_xi", ab.mean_xi}, {"var_xi", ab.var_xi}};
    if (ab.exact_alpha) j["alpha_exact"] = to_string(*ab.exact_alpha);
    if (ab.exact_beta) j["beta_exact"] = to_string(*ab.exact_beta);
    return j;
}

Json certificate_json(const GwCertificate& cert) {
    Json checks = Json::array();
    for (const auto& k : cert.constant_checks) {
        checks.push_back(Json{{"degree", k.degree}, {"matches", k.matches}, {"x_value", k.x_value}});
    }
    Json j{{"alpha", cert.ab.alpha},
           {"beta", cert.ab.beta},
           {"constant_checks", checks},
           {"forces_zero_alpha_beta", cert.forces_zero_alpha_beta},
           {"background", cert.background}};
    j["embedded_at"] = cert.embedded_at ? Json(*cert.embedded_at) : Json(nullptr);
    if (!cert.embedded_at) j["replacement"] = cert.replacement;
    j["left"] = values_json(cert.left);
    j["right"] = values_json(cert.right);
    j["middle_a"] = values_json(cert.middle_a);
    j["middle_b"] = values_json(cert.middle_b);
    j["f_a"] = cert.f_a;
    j["f_b"] = cert.f_b;
    j["rc2"] = Json{{"differs", cert.rc2.differs}, {"s_a", cert.rc2.s_a}, {"s_b", cert.rc2.s_b}};
    j["verdict"] = cert.positive ? "sigma2 > 0" : "inconclusive";
    return j;
}

Json statistic_json(const std::vector<std::string>& names, const std::vector<double>& coefs) {
    Json out = Json::array();
    for (std::size_t i = 0; i < names.size(); ++i) out.push_back(Json{{"tree", names[i]}, {"coef", coefs[i]}});
    return out;
}

RunResult cmd_gw(const RunConfig& c) {
    const OffspringDistribution off = offspring_of(c);
    const auto trees = ordered_trees(c);
    const OrderedStatistic stat(terms_of(c, trees));
    const std::size_t n = c.n.empty() ? kDefaultTreeN : c.n.front();
    const std::size_t reps = reps_or(c, kDefaultGwReps);
    Json j = header(c);
    j["offspring"] = offspring_json(off);
    std::vector<std::string> names;
    std::vector<double> coefs;
    for (const auto& t : stat.terms()) {
        names.push_back(t.tree.to_string());
        coefs.push_back(t.coefficient);
    }
    j["statistic"] = statistic_json(names, coefs);
    try {
        j["centering"] = alpha_beta_json(gw_alpha_beta(stat, off));
        const GwSigma s = gw_sigma_squared(stat, off, GwMode::exact);
        Json sj{{"mode", "exact"}, {"value", s.sigma2}, {"approximate", s.approximate}};
        if (s.exact_sigma2) sj["exact"] = to_string(*s.exact_sigma2);
        j["sigma2"] = sj;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::unsupported && e.kind() != ErrorKind::resource) throw;
        if (!j.contains("centering")) j["centering"] = nullptr;
        j["sigma2"] = Json{{"mode", "exact"}, {"value", nullptr}, {"error", e.what()}};
    }
    const auto dens = gw_density_mc(trees, off, n, {reps, c.seed, c.workers}, c.budget);
    j["n"] = n;
    j["reps"] = reps;
    Json rows = Json::array();
    for (const GwDensity& d : dens) {
        rows.push_back(Json{{"tree", d.pattern.to_string()},
                            {"size", d.pattern.size()},
                            {"density", d.density.value},
                            {"density_se", d.density.std_error},
                            {"limit", d.limit},
                            {"z", d.density.std_error > 0 ? (d.density.value - d.limit) / d.density.std_error : 0.0}});
    }
    j["rows"] = rows;
    if (c.certificate) j["certificate"] = certificate_json(gw_degeneracy_argument(stat, off));
    return {j.dump(2) + "\n", 0};
}

RunResult cmd_witness(const RunConfig& c) {
    Json j = header(c);
    if (c.offspring) {
        const OffspringDistribution off = offspring_of(c);
        const OrderedStatistic stat(terms_of(c, ordered_trees(c)));
        const GwCertificate cert = gw_degeneracy_argument(stat, off);
        j["kind"] = "gw";
        j["offspring"] = offspring_json(off);
        j["certificate"] = certificate_json(cert);
        return {j.dump(2) + "\n", cert.positive ? kVerdictNondegenerate : 0};
    }
    if (!c.trees.empty()) {
        const BinaryStatistic stat(terms_of(c, binary_trees(c)));
        const std::size_t ell = stat.max_size() + 2;
        const std::size_t n = c.n.empty() ? std::max<std::size_t>(20, 3 * ell + 1) : c.n.front();
        const BstWitness w = bst_witness_configuration(stat, n);
        const Rc2Result rc2 = bst_witness_check(stat, w);
        std::vector<std::string> names;
        std::vector<double> coefs;
        for (const auto& t : stat.terms()) {
            names.push_back(t.tree.to_string());
            coefs.push_back(t.coefficient);
        }
        j["kind"] = "bst";
        j["statistic"] = statistic_json(names, coefs);
        j["n"] = w.n;
        j["ell"] = w.ell;
        j["block_begin"] = w.block_begin;
        j["u_prime"] = values_json(w.u_prime);
        j["u_double_prime"] = values_json(w.u_double_prime);
        j["counts_prime"] = w.counts_prime;
        j["counts_double_prime"] = w.counts_double_prime;
        j["f_prime"] = w.f_prime;
        j["f_double_prime"] = w.f_double_prime;
        j["rc2"] = Json{{"differs", rc2.differs}, {"s_a", rc2.s_a}, {"s_b", rc2.s_b}};
        j["verdict"] = rc2.differs ? "sigma2 > 0" : "inconclusive";
        return {j.dump(2) + "\n", rc2.differs ? kVerdictNondegenerate : 0};
    }
    const BlockFactor f = load(c);
    DecomposeOptions opts;
    opts.tolerance = c.tolerance;
    const CoboundaryResult r = coboundary_decompose(f, opts);
    j["kind"] = "coboundary";
    j["factor"] = describe_factor(f);
    j.update(decomposition_json(f, r));
    return {j.dump(2) + "\n", r.degenerate() ? 0 : kVerdictNondegenerate};
}

void csv_cell(std::ostringstream& os, const Json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            os << s;
        } else {
            os << '"';
            for (char ch : s) os << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
            os << '"';
        }
    } else if (v.is_null()) {
        os << "";
    } else if (v.is_structured()) {
        std::string s = v.dump();
        csv_cell(os, Json(s));
    } else {
        os << v.dump();
    }
}

void flatten(const Json& v, const std::string& path, std::ostringstream& os) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, os);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ',';
        csv_cell(os, v);
        os << '\n';
    }
}

}  // namespace

RunResult run_command(const RunConfig& config) {
    RunResult r;
    if (config.command == "analyze") {
        r = cmd_analyze(config);
    } else if (config.command == "decompose") {
        r = cmd_decompose(config);
    } else if (config.command == "clt") {
        r = cmd_clt(config);
    } else if (config.command == "bst") {
        r = cmd_bst(config);
    } else if (config.command == "gw") {
        r = cmd_gw(config);
    } else if (config.command == "witness") {
        r = cmd_witness(config);
    } else {
        fail(ErrorKind::invalid_argument, "unknown command '" + config.command + "'");
    }
    if (config.format == ReportFormat::csv) r.report = report_to_csv(r.report);
    return r;
}

std::string report_to_csv(std::string_view json_report) {
    const Json j = Json::parse(json_report);
    std::ostringstream os;
    if (j.contains("rows") && j["rows"].is_array() && !j["rows"].empty() && j["rows"][0].is_object()) {
        const Json& rows = j["rows"];
        bool first = true;
        for (const auto& [k, v] : rows[0].items()) {
            os << (first ? "" : ",") << k;
            first = false;
        }
        os << '\n';
        for (const Json& row : rows) {
            first = true;
            for (const auto& [k, v] : rows[0].items()) {
                if (!first) os << ',';
                first = false;
                csv_cell(os, row.contains(k) ? row[k] : Json(nullptr));
            }
            os << '\n';
        }
        return os.str();
    }
    flatten(j, "", os);
    return os.str();
}

RunConfig parse_run_config(std::string_view json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::parse, std::string("run config: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::parse, "run config: expected an object");
    RunConfig c;
    auto field = [&](const char* key) -> const Json* { return j.contains(key) ? &j[key] : nullptr; };
    auto bad = [](const std::string& key, const char* what) { fail(ErrorKind::parse, "run config." + key + ": expected " + what); };
    for (const auto& [key, v] : j.items()) {
        static const char* known[] = {"command", "input",  "factor",   "seed",  "reps",  "n",         "tolerance",
                                      "format",  "workers", "truncate", "trees", "coefs", "offspring", "certificate",
                                      "budget"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known)) {
            fail(ErrorKind::parse, "run config." + key + ": unknown field");
        }
    }
    if (auto v = field("command")) {
        if (!v->is_string()) bad("command", "a string");
        c.command = v->get<std::string>();
    }
    for (const char* key : {"input", "factor", "offspring"}) {
        if (auto v = field(key); v && !v->is_null()) {
            if (!v->is_string()) bad(key, "a string");
            std::optional<std::string>& slot =
                std::string(key) == "input" ? c.input : (std::string(key) == "factor" ? c.factor : c.offspring);
            slot = v->get<std::string>();
        }
    }
    if (auto v = field("seed")) {
        if (!v->is_number_unsigned()) bad("seed", "a nonnegative integer");
        c.seed = v->get<std::uint64_t>();
    }
    if (auto v = field("reps")) {
        if (!v->is_number_unsigned()) bad("reps", "a nonnegative integer");
        c.reps = v->get<std::size_t>();
    }
    if (auto v = field("n")) {
        if (!v->is_array()) bad("n", "an array of positive integers");
        for (const auto& x : *v) {
            if (!x.is_number_unsigned() || x.get<std::size_t>() == 0) bad("n", "an array of positive integers");
            c.n.push_back(x.get<std::size_t>());
        }
    }
    if (auto v = field("tolerance")) {
        if (!v->is_number() || !(v->get<double>() >= 0.0)) bad("tolerance", "a nonnegative number");
        c.tolerance = v->get<double>();
    }
    if (auto v = field("format")) {
        if (!v->is_string() || (*v != "json" && *v != "csv")) bad("format", "\"json\" or \"csv\"");
        c.format = *v == "csv" ? ReportFormat::csv : ReportFormat::json;
    }
    if (auto v = field("workers")) {
        if (!v->is_number_unsigned()) bad("workers", "a nonnegative integer");
        c.workers = v->get<unsigned>();
    }
    if (auto v = field("truncate"); v && !v->is_null()) {
        if (!v->is_number_unsigned()) bad("truncate", "a nonnegative integer");
        c.truncate = v->get<std::size_t>();
    }
    if (auto v = field("trees")) {
        if (!v->is_array()) bad("trees", "an array of strings");
        for (const auto& x : *v) {
            if (!x.is_string()) bad("trees", "an array of strings");
            c.trees.push_back(x.get<std::string>());
        }
    }
    if (auto v = field("coefs")) {
        if (!v->is_array()) bad("coefs", "an array of numbers");
        for (const auto& x : *v) {
            if (!x.is_number()) bad("coefs", "an array of numbers");
            c.coefs.push_back(x.get<double>());
        }
    }
    if (auto v = field("budget")) {
        if (!v->is_number_unsigned() || v->get<std::size_t>() == 0) bad("budget", "a positive integer");
        c.budget = v->get<std::size_t>();
    }
    if (auto v = field("certificate")) {
        if (!v->is_boolean()) bad("certificate", "a boolean");
        c.certificate = v->get<bool>();
    }
    return c;
}

std::string run_config_to_json(const RunConfig& c) {
    Json j{{"command", c.command}};
    if (c.input) j["input"] = *c.input;
    if (c.factor) j["factor"] = *c.factor;
    j["seed"] = c.seed;
    j["reps"] = c.reps;
    j["n"] = c.n;
    j["tolerance"] = c.tolerance;
    j["format"] = c.format == ReportFormat::csv ? "csv" : "json";
    j["workers"] = c.workers;
    if (c.truncate) j["truncate"] = *c.truncate;
    j["trees"] = c.trees;
    j["coefs"] = c.coefs;
    if (c.offspring) j["offspring"] = *c.offspring;
    j["certificate"] = c.certificate;
    j["budget"] = c.budget;
    return j.dump();
}

const char* library_version() noexcept { return "1.0.0"; }

}  // namespace mdep
