#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mdep/bst.hpp"
#include "mdep/coboundary.hpp"
#include "mdep/error.hpp"
#include "mdep/gw.hpp"
#include "mdep/offspring.hpp"
#include "mdep/rng.hpp"
#include "support.hpp"

using namespace mdep;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an mdep::Error");
    return ErrorKind::invalid_argument;
}

OffspringDistribution quarter_half_quarter() {
    return OffspringDistribution::from_rationals({Rational(1, 4), Rational(1, 2), Rational(1, 4)});
}

std::size_t zeros(const OrderedTree& t) {
    return static_cast<std::size_t>(std::count(t.degrees().begin(), t.degrees().end(), 0u));
}

}  // namespace

TEST_CASE("binary tree codes") {
    const BinaryTree cherry = BinaryTree::parse("1100100");
    CHECK(cherry.size() == 3);
    CHECK(cherry.to_string() == "1100100");
    CHECK(cherry.subtree_sizes() == std::vector<std::size_t>{3, 1, 1});
    CHECK(BinaryTree::leaf().to_string() == "100");
    CHECK(kind_of([] { BinaryTree::parse("110"); }) == ErrorKind::parse);
    CHECK(kind_of([] { BinaryTree::parse("1002"); }) == ErrorKind::parse);
    CHECK_FALSE(is_binary_code(std::vector<std::uint8_t>{1, 0}));
}

TEST_CASE("bst_from_keys examples") {
    const std::vector<double> balanced = {2, 1, 3};
    const std::vector<double> increasing = {1, 2, 3};
    const std::vector<double> decreasing = {3, 2, 1};
    CHECK(bst_from_keys(balanced).to_string() == "1100100");
    CHECK(bst_from_keys(increasing).to_string() == "1010100");
    CHECK(bst_from_keys(decreasing).to_string() == "1110000");
    CHECK(bst_from_keys(std::vector<double>{}).to_string() == "0");
    CHECK(bst_devroye_tree(0, 1).empty());
    CHECK(bst_devroye_tree(1, 1) == BinaryTree::leaf());
    const std::vector<double> dup = {1, 2, 1};
    CHECK(kind_of([&] { bst_from_keys(dup); }) == ErrorKind::domain);
    const std::vector<double> u = {0.6, 0.2, 0.9};
    CHECK(min_rooted_tree(u) == bst_from_uniforms(u));
}

TEST_CASE("random BST of three keys is balanced with probability 1/3") {
    std::vector<double> u = {1, 2, 3};
    std::size_t balanced = 0;
    std::size_t total = 0;
    do {
        ++total;
        if (bst_from_uniforms(u).to_string() == "1100100") ++balanced;
    } while (std::next_permutation(u.begin(), u.end()));
    CHECK(total == 6);
    CHECK(balanced == 2);
    CHECK(bst_shape_probability(BinaryTree::parse("1100100")) == doctest::Approx(1.0 / 3.0));
    CHECK(bst_shape_probability(BinaryTree::parse("1010100")) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("fringe indicator examples") {
    const BinaryTree left_child = BinaryTree::parse("11000");
    const std::vector<double> w1 = {0.05, 0.7, 0.3, 0.1};
    CHECK(bst_fringe_indicator(left_child, w1) == 1);
    CHECK(bst_fringe_indicator(BinaryTree::parse("10100"), w1) == 0);
    const std::vector<double> w2 = {0.5, 0.7, 0.3, 0.1};
    CHECK(bst_fringe_indicator(left_child, w2) == 0);
    const std::vector<double> w0 = {0.1, 0.5, 0.2};
    CHECK(bst_fringe_indicator(BinaryTree::leaf(), w0) == 1);
    const std::vector<double> path = {0.1, 0.2, 0.3, 0.4, 0.5};
    CHECK(bst_window_count(path, BinaryTree::leaf()) == 1);
    const std::vector<double> one = {0.7};
    CHECK(bst_window_count(one, BinaryTree::leaf()) == 1);
    const std::vector<double> padded = {0.0, 0.4, 0.0};
    CHECK(bst_fringe_indicator(BinaryTree::leaf(), padded) == 1);
    const std::vector<double> wrong = {0.0, 0.4};
    CHECK(kind_of([&] { bst_fringe_indicator(BinaryTree::leaf(), wrong); }) == ErrorKind::arity);
    const std::vector<double> tied = {0.1, 0.5, 0.5, 0.0};
    CHECK(kind_of([&] { bst_fringe_indicator(left_child, tied); }) == ErrorKind::domain);
}

TEST_CASE("pattern probabilities match permutation enumeration") {
    for (std::size_t k = 1; k <= 3; ++k) {
        for (const std::string& code : testing::binary_trees_of_size(k)) {
            const BinaryTree t = BinaryTree::parse(code);
            std::vector<double> w(k + 2);
            std::iota(w.begin(), w.end(), 1.0);
            std::size_t hits = 0;
            std::size_t total = 0;
            do {
                ++total;
                hits += static_cast<std::size_t>(bst_fringe_indicator(t, w));
            } while (std::next_permutation(w.begin(), w.end()));
            CHECK(bst_pattern_probability(t) == doctest::Approx(static_cast<double>(hits) / total));
        }
    }
}

TEST_CASE("window counts equal subtree counts of the inserted tree") {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const std::vector<double> u = bst_uniforms(n, seed);
            const BinaryTree tree = bst_from_uniforms(u);
            CHECK(tree.size() == n);
            for (std::size_t k = 1; k <= 3; ++k) {
                for (const std::string& code : testing::binary_trees_of_size(k)) {
                    const BinaryTree t = BinaryTree::parse(code);
                    const std::size_t oracle = testing::fringe_count_oracle(u, code);
                    CHECK(bst_window_count(u, t) == oracle);
                    CHECK(count_fringe(tree, t) == oracle);
                }
            }
        }
    }
    CHECK(bst_subtree_count(50, BinaryTree::leaf(), 3) ==
          testing::fringe_count_oracle(bst_uniforms(50, 3), "100"));
}

TEST_CASE("fringe factor has the pattern probability as mean") {
    const BlockFactor f = bst_fringe_factor(BinaryTree::parse("11000"));
    CHECK(f.ell() == 4);
    CHECK(f.traits().locally_constant);
    REQUIRE(f.traits().mean.has_value());
    CHECK(*f.traits().mean == doctest::Approx(2.0 / 12.0 * 0.5));
    const BinaryStatistic stat({{BinaryTree::leaf(), 1.0}, {BinaryTree::parse("1100100"), -2.0}});
    CHECK(bst_linear_factor(stat).ell() == 5);
}

TEST_CASE("BST witness configuration for the leaf count") {
    const BinaryStatistic stat(BinaryTree::leaf());
    const BstWitness w = bst_witness_configuration(stat, 20);
    CHECK(w.ell == 3);
    CHECK(std::is_sorted(w.u_prime.begin(), w.u_prime.end()));
    CHECK(w.counts_double_prime[0] == w.counts_prime[0] + 1);
    CHECK(w.f_double_prime - w.f_prime == doctest::Approx(1.0));
    CHECK(testing::fringe_count_oracle(w.u_prime, "100") == w.counts_prime[0]);
    CHECK(testing::fringe_count_oracle(w.u_double_prime, "100") == w.counts_double_prime[0]);
    const Rc2Result rc = bst_witness_check(stat, w);
    CHECK(rc.differs);
    CHECK(kind_of([&] { bst_witness_configuration(stat, 9); }) == ErrorKind::domain);
    CHECK_NOTHROW(bst_witness_configuration(stat, 10));
}

TEST_CASE("BST witness for a two-pattern statistic") {
    const BinaryStatistic stat({{BinaryTree::leaf(), 1.0}, {BinaryTree::parse("11000"), -1.0}});
    const BstWitness w = bst_witness_configuration(stat, 30);
    CHECK(w.counts_double_prime[0] == w.counts_prime[0] + 1);
    CHECK(bst_witness_check(stat, w).differs);
}

TEST_CASE("BST density estimates are worker independent") {
    const std::vector<BinaryTree> pats = {BinaryTree::leaf(), BinaryTree::parse("11000")};
    const auto a = bst_density_mc(pats, 200, {.reps = 100, .seed = 4, .workers = 1});
    const auto b = bst_density_mc(pats, 200, {.reps = 100, .seed = 4, .workers = 3});
    CHECK(a[0].density.value == b[0].density.value);
    CHECK(a[1].density.value == b[1].density.value);
    CHECK(a[0].limit == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(a[0].density.value - 1.0 / 3.0) < 5 * a[0].density.std_error + 1.0 / 600);
}

TEST_CASE("ordered tree parsing and validation") {
    const OrderedTree t = OrderedTree::parse(" 2, 0 ,0");
    CHECK(t.size() == 3);
    CHECK(t.to_string() == "2,0,0");
    CHECK(kind_of([] { OrderedTree::parse("2,0"); }) == ErrorKind::parse);
    CHECK(kind_of([] { OrderedTree::parse("a"); }) == ErrorKind::parse);
    CHECK(is_tree_degree_sequence(std::vector<std::uint32_t>{1, 1, 0}));
    CHECK_FALSE(is_tree_degree_sequence(std::vector<std::uint32_t>{0, 1, 0}));
}

TEST_CASE("GW degree indicator examples") {
    const OrderedTree cherry = OrderedTree::parse("2,0,0");
    const std::vector<std::int64_t> w1 = {2, 0, 0};
    const std::vector<std::int64_t> w2 = {2, 0, 1};
    CHECK(gw_degree_indicator(cherry, w1) == 1);
    CHECK(gw_degree_indicator(cherry, w2) == 0);
    const std::vector<double> wd = {2.0, 0.0, 0.0};
    CHECK(gw_degree_indicator(cherry, wd) == 1);
    const std::vector<std::int64_t> shortw = {2, 0};
    CHECK(kind_of([&] { gw_degree_indicator(cherry, shortw); }) == ErrorKind::arity);
}

TEST_CASE("cycle-lemma rotation") {
    const std::vector<std::int64_t> xi = {0, 2, 0};
    CHECK(gw_rotate_to_tree(xi).to_string() == "2,0,0");
    const std::vector<std::int64_t> xi2 = {0, 0, 1, 3, 0};
    CHECK(gw_rotate_to_tree(xi2).to_string() == "1,3,0,0,0");
    const std::vector<std::int64_t> bad = {1, 1, 1};
    CHECK(kind_of([&] { gw_rotate_to_tree(bad); }) == ErrorKind::domain);
    std::mt19937_64 eng(1);
    std::uniform_int_distribution<int> d(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> s(6);
        for (auto& x : s) x = d(eng);
        const std::int64_t sum = std::accumulate(s.begin(), s.end(), std::int64_t{0});
        if (sum != 5) continue;
        const OrderedTree t = gw_rotate_to_tree(s);
        CHECK(is_tree_degree_sequence(t.degrees()));
    }
}

TEST_CASE("conditioned GW trees: forced small cases") {
    const auto poisson = OffspringDistribution::preset("poisson1");
    CHECK(gw_conditioned_degrees(poisson, 1, std::uint64_t{5}).to_string() == "0");
    CHECK(gw_conditioned_degrees(poisson, 2, std::uint64_t{5}).to_string() == "1,0");
    std::mt19937_64 eng(8);
    std::size_t cherries = 0;
    const std::size_t draws = 30000;
    for (std::size_t i = 0; i < draws; ++i) {
        if (gw_conditioned_degrees(poisson, 3, eng).to_string() == "2,0,0") ++cherries;
    }
    const double p = static_cast<double>(cherries) / draws;
    CHECK(std::abs(p - 1.0 / 3.0) < 5 * std::sqrt(2.0 / 9.0 / draws));
}

TEST_CASE("conditioned GW trees follow the exact conditional law") {
    const auto off = quarter_half_quarter();
    const std::vector<double> p = {0.25, 0.5, 0.25};
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto law = testing::gw_conditional_law(p, n);
        std::map<std::vector<std::uint32_t>, std::size_t> seen;
        std::mt19937_64 eng(100 + n);
        const std::size_t draws = 20000;
        for (std::size_t i = 0; i < draws; ++i) ++seen[gw_conditioned_degrees(off, n, eng).degrees()];
        double chi2 = 0.0;
        for (const auto& [seq, prob] : law) {
            const double expected = prob * draws;
            const double diff = static_cast<double>(seen[seq]) - expected;
            chi2 += diff * diff / expected;
        }
        CHECK(seen.size() == law.size());
        const double df = static_cast<double>(law.size()) - 1.0;
        if (df > 0) CHECK(chi2 < chi_square_quantile(0.999, df));
    }
}

TEST_CASE("rejection budget exhaustion is a resource error") {
    const auto off = quarter_half_quarter();
    std::mt19937_64 eng(1);
    CHECK(kind_of([&] { gw_conditioned_degrees(off, 2000, eng, 3); }) == ErrorKind::resource);
}

TEST_CASE("cyclic window counts equal fringe subtree counts") {
    const auto off = OffspringDistribution::preset("geom-half");
    const std::vector<OrderedTree> pats = {OrderedTree::leaf(), OrderedTree::parse("1,0"), OrderedTree::parse("2,0,0"),
                                           OrderedTree::parse("1,1,0")};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const OrderedTree t = gw_conditioned_degrees(off, 40, seed);
        CHECK(gw_cyclic_count(t, pats[0]) == zeros(t));
        for (const auto& pat : pats) CHECK(gw_cyclic_count(t, pat) == count_fringe(t, pat));
    }
}

TEST_CASE("offspring laws") {
    const auto poisson = OffspringDistribution::preset("poisson1");
    CHECK(poisson.is_approximate());
    CHECK(poisson.truncation() == kDefaultTruncation);
    CHECK(poisson.pmf(0) == doctest::Approx(std::exp(-1.0)));
    CHECK(poisson.mean() == doctest::Approx(1.0));
    CHECK(poisson.variance() == doctest::Approx(1.0));
    CHECK(poisson.truncated_mass() < 1e-30);
    const auto geom = OffspringDistribution::parse(R"({"preset": "geom-half", "truncate": 10})");
    CHECK(geom.truncation() == 10);
    CHECK(geom.variance() == doctest::Approx(2.0));
    CHECK(OffspringDistribution::parse("geom-half", 12).truncation() == 12);
    const auto exact = OffspringDistribution::parse(R"({"p": ["1/4", "1/2", "1/4"]})");
    CHECK(exact.exact_probabilities().has_value());
    CHECK_FALSE(exact.is_approximate());
    CHECK(exact.positive_support() == std::vector<std::int64_t>{1, 2});
    CHECK(kind_of([] { OffspringDistribution::parse(R"({"p": [0.25, "1/2", 0.25]})"); }) == ErrorKind::parse);
    CHECK(kind_of([] { OffspringDistribution::parse("{"); }) == ErrorKind::parse);
    CHECK(kind_of([] { OffspringDistribution::from_probabilities({0.5, 0.5}); }) == ErrorKind::domain);
    CHECK(kind_of([] { OffspringDistribution::from_probabilities({0.0, 1.0}); }) == ErrorKind::domain);
    CHECK(kind_of([] { OffspringDistribution::from_probabilities({0.5, 0.6}); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { OffspringDistribution::preset("binomial"); }) == ErrorKind::invalid_argument);
    const auto untruncated = OffspringDistribution::preset("poisson1", 0);
    CHECK(kind_of([&] { untruncated.probabilities(); }) == ErrorKind::unsupported);
}

TEST_CASE("offspring sampling matches the law") {
    const auto geom = OffspringDistribution::preset("geom-half");
    std::mt19937_64 eng(3);
    std::vector<std::size_t> counts(5, 0);
    const std::size_t draws = 100000;
    double total = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const auto k = geom.sample(eng);
        total += static_cast<double>(k);
        if (k < 5) ++counts[static_cast<std::size_t>(k)];
    }
    for (std::size_t k = 0; k < 5; ++k) {
        const double p = std::ldexp(1.0, -static_cast<int>(k + 1));
        CHECK(std::abs(counts[k] / static_cast<double>(draws) - p) < 5 * std::sqrt(p * (1 - p) / draws));
    }
    CHECK(std::abs(total / draws - 1.0) < 5 * std::sqrt(2.0 / draws));
}

TEST_CASE("alpha and beta in closed form") {
    const OrderedStatistic leaf(OrderedTree::leaf());
    const AlphaBeta geom = gw_alpha_beta(leaf, OffspringDistribution::preset("geom-half"));
    CHECK(geom.alpha == doctest::Approx(-0.25));
    CHECK(geom.beta == doctest::Approx(-0.75));
    const AlphaBeta poi = gw_alpha_beta(leaf, OffspringDistribution::preset("poisson1", 20));
    CHECK(poi.alpha == doctest::Approx(-std::exp(-1.0)).epsilon(1e-9));
    CHECK(poi.beta == doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-9));
    const AlphaBeta q = gw_alpha_beta(leaf, quarter_half_quarter());
    REQUIRE(q.exact_alpha.has_value());
    CHECK(*q.exact_alpha == Rational(-1, 2));
    CHECK(*q.exact_beta == Rational(-3, 4));
    CHECK(kind_of([] { gw_alpha_beta(OrderedStatistic(OrderedTree::leaf()), OffspringDistribution::preset("poisson1", 0)); }) ==
          ErrorKind::unsupported);
}

TEST_CASE("closed form and window enumeration agree; centered mean is zero") {
    const auto off = OffspringDistribution::preset("geom-half", 12);
    const OrderedStatistic stat({{OrderedTree::leaf(), 2.0}, {OrderedTree::parse("1,0"), -1.0}, {OrderedTree::parse("2,0,0"), 0.5}});
    const AlphaBeta a = gw_alpha_beta(stat, off);
    const BlockFactor raw = gw_statistic_factor(stat, off.exact_source());
    const AlphaBeta b = gw_alpha_beta(raw);
    CHECK(a.alpha == doctest::Approx(b.alpha).epsilon(1e-10));
    CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-10));
    const BlockFactor centered = gw_centered_factor(raw, a);
    CHECK(std::abs(exact_moments(centered).mean) < 1e-9);
}

TEST_CASE("f(d) = d has alpha = 1, beta = 0 and sigma2 = 0") {
    const auto off = quarter_half_quarter();
    const BlockFactor f = BlockFactor::from_table(off.exact_source(), 1, {0, 1, 2}, std::nullopt, "degree");
    const AlphaBeta ab = gw_alpha_beta(f);
    CHECK(ab.alpha == doctest::Approx(1.0));
    CHECK(ab.beta == doctest::Approx(0.0));
    CHECK(exact_moments(gw_centered_factor(f, ab)).sigma2 == 0.0);
}

TEST_CASE("leaf count variance for xi in {0,1,2}") {
    const GwSigma s = gw_sigma_squared(OrderedStatistic(OrderedTree::leaf()), quarter_half_quarter(), GwMode::exact);
    REQUIRE(s.exact_sigma2.has_value());
    CHECK(*s.exact_sigma2 == Rational(1, 16));
    CHECK_FALSE(s.approximate);
    const GwSigma mc = gw_sigma_squared(OrderedStatistic(OrderedTree::leaf()), quarter_half_quarter(), GwMode::mc, 400,
                                        {.reps = 3000, .seed = 2, .workers = 2});
    CHECK(std::abs(mc.sigma2 - 1.0 / 16.0) < 5 * mc.std_error + 1e-3);
}

TEST_CASE("Poisson leaf variance is e^-1 - 2e^-2") {
    const GwSigma s = gw_sigma_squared(OrderedStatistic(OrderedTree::leaf()), OffspringDistribution::preset("poisson1"),
                                       GwMode::exact);
    CHECK(s.sigma2 == doctest::Approx(std::exp(-1.0) - 2 * std::exp(-2.0)).epsilon(1e-9));
    CHECK(s.approximate);
}

TEST_CASE("centering covariance vanishes") {
    const auto off = OffspringDistribution::preset("poisson1");
    const OrderedStatistic leaf(OrderedTree::leaf());
    const Estimate c = gw_centering_covariance_mc(leaf, off, 1000, {.reps = 2000, .seed = 6});
    CHECK(std::abs(c.value) < 5 * c.std_error);
}

TEST_CASE("nondegeneracy certificate for xi in {0,1,2}") {
    const GwCertificate c = gw_degeneracy_argument(OrderedStatistic(OrderedTree::leaf()), quarter_half_quarter());
    CHECK(c.positive);
    CHECK(c.rc2.differs);
    CHECK(c.forces_zero_alpha_beta);
    CHECK(c.constant_checks.size() == 2);
    for (const auto& k : c.constant_checks) CHECK(k.matches == 0);
    CHECK(c.f_a != c.f_b);
    CHECK(c.middle_a.size() == c.middle_b.size());
}

TEST_CASE("certificate for a Poisson pattern statistic") {
    const OrderedStatistic stat({{OrderedTree::parse("2,0,0"), 1.0}, {OrderedTree::leaf(), 0.5}});
    const GwCertificate c = gw_degeneracy_argument(stat, OffspringDistribution::preset("poisson1", 8));
    CHECK(c.positive);
    CHECK(c.rc2.differs);
}

TEST_CASE("laws supported on {0, r} are excluded") {
    const auto two = OffspringDistribution::from_probabilities({0.5, 0.0, 0.5});
    CHECK(kind_of([&] { gw_degeneracy_argument(OrderedStatistic(OrderedTree::leaf()), two); }) == ErrorKind::unsupported);
}

TEST_CASE("GW density estimates") {
    const auto off = OffspringDistribution::preset("poisson1");
    const std::vector<OrderedTree> pats = {OrderedTree::leaf()};
    const auto a = gw_density_mc(pats, off, 300, {.reps = 200, .seed = 1, .workers = 1});
    const auto b = gw_density_mc(pats, off, 300, {.reps = 200, .seed = 1, .workers = 3});
    CHECK(a[0].density.value == b[0].density.value);
    CHECK(a[0].limit == doctest::Approx(std::exp(-1.0)));
    CHECK(std::abs(a[0].density.value - std::exp(-1.0)) < 5 * a[0].density.std_error + 1.0 / 300);
    CHECK(gw_pattern_probability(OrderedTree::parse("2,0,0"), off) ==
          doctest::Approx(std::exp(-3.0) / 2.0));
}

TEST_CASE("padded window count and the plain block sum differ by at most two windows") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::vector<double> u = bst_uniforms(60, seed);
        for (const char* code : {"100", "11000", "1100100"}) {
            const BinaryTree t = BinaryTree::parse(code);
            const double block = configuration_sum(bst_fringe_factor(t), u);
            const double exact = static_cast<double>(bst_window_count(u, t));
            CHECK(std::abs(exact - block) <= 2.0);
        }
    }
}

TEST_CASE("more GW indicator examples") {
    const OrderedTree path = OrderedTree::parse("1,0");
    CHECK(gw_degree_indicator(path, std::vector<std::int64_t>{1, 0}) == 1);
    CHECK(gw_degree_indicator(path, std::vector<std::int64_t>{0, 1}) == 0);
    CHECK(gw_degree_indicator(OrderedTree::leaf(), std::vector<std::int64_t>{0}) == 1);
    CHECK(gw_subtree_count(1, OrderedTree::leaf(), OffspringDistribution::preset("poisson1"), 3) == 1);
}

TEST_CASE("statistics with only zero coefficients are rejected") {
    CHECK(kind_of([] { OrderedStatistic({{OrderedTree::leaf(), 0.0}}); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { BinaryStatistic({{BinaryTree::leaf(), 1.0}, {BinaryTree::leaf(), 2.0}}); }) ==
          ErrorKind::invalid_argument);
}

TEST_CASE("Poisson leaf density at n = 6 against exact conditional enumeration") {
    const auto off = OffspringDistribution::preset("poisson1");
    std::vector<double> p(6);
    for (std::int64_t k = 0; k < 6; ++k) p[static_cast<std::size_t>(k)] = off.pmf(k);
    double expected = 0.0;
    for (const auto& [seq, prob] : testing::gw_conditional_law(p, 6)) {
        expected += prob * static_cast<double>(std::count(seq.begin(), seq.end(), 0u)) / 6.0;
    }
    const auto d = gw_density_mc({OrderedTree::leaf()}, off, 6, {.reps = 20000, .seed = 12});
    CHECK(std::abs(d[0].density.value - expected) < 5 * d[0].density.std_error);
}

TEST_CASE("Poisson leaf density at n = 2000") {
    const auto d = gw_density_mc({OrderedTree::leaf()}, OffspringDistribution::preset("poisson1"), 2000,
                                 {.reps = 400, .seed = 13});
    CHECK(std::abs(d[0].density.value - std::exp(-1.0)) < 5 * d[0].density.std_error + 1e-3);
}

TEST_CASE("every certificate replays through the rc2 check") {
    const std::vector<OrderedStatistic> stats = {
        OrderedStatistic(OrderedTree::leaf()),
        OrderedStatistic({{OrderedTree::parse("1,0"), 1.0}, {OrderedTree::parse("2,0,0"), -3.0}}),
        OrderedStatistic(OrderedTree::parse("1,1,0")),
    };
    const std::vector<OffspringDistribution> laws = {
        quarter_half_quarter(), OffspringDistribution::preset("geom-half", 10),
        OffspringDistribution::from_probabilities({0.5, 0.25, 0.0, 0.25})};
    for (const auto& s : stats) {
        for (const auto& off : laws) {
            const GwCertificate c = gw_degeneracy_argument(s, off);
            CHECK(c.rc2.differs);
            const BlockFactor centered = gw_centered_factor(gw_statistic_factor(s, off.exact_source()), c.ab);
            const Rc2Result again = rc2_witness_check(centered, c.left, c.right, c.middle_a, c.middle_b);
            CHECK(again.differs);
            CHECK(again.s_a == doctest::Approx(c.rc2.s_a));
        }
    }
}
