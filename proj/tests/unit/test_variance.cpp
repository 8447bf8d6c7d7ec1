#include <doctest.h>

#include <cmath>

#include "mdep/catalog.hpp"
#include "mdep/error.hpp"
#include "mdep/variance.hpp"
#include "support.hpp"

using namespace mdep;

TEST_CASE("exact moments of x1*x2 over Bernoulli(1/2)") {
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 1}), 2, {0, 0, 0, 1});
    const MomentSummary m = exact_moments(f);
    CHECK(m.rational);
    REQUIRE(m.exact.has_value());
    CHECK(m.exact->back() == Rational(5, 16));
    CHECK(m.sigma2 == 0.3125);
    CHECK(m.mean == 0.25);
    CHECK(m.variance == 0.1875);
    REQUIRE(m.lag_covariances.size() == 1);
    CHECK(m.lag_covariances[0] == 0.0625);
    CHECK(var_sn_exact(f, 3) == doctest::Approx(0.8125));
    CHECK_FALSE(m.degenerate());
}

TEST_CASE("floating mode agrees with rational mode") {
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 2, 3}), 2, {1, -2, 0, 3, 5, -1, 2, 2, 7});
    const MomentSummary r = exact_moments(f, {.mode = ArithmeticMode::rational});
    const MomentSummary d = exact_moments(f, {.mode = ArithmeticMode::floating});
    CHECK(r.rational);
    CHECK_FALSE(d.rational);
    CHECK(d.sigma2 == doctest::Approx(r.sigma2).epsilon(1e-13));
    CHECK(d.mean == doctest::Approx(r.mean).epsilon(1e-13));
    const BlockFactor g = BlockFactor::from_table(testing::finite_source({0, 1}, {0.3, 0.7}), 1, {0, 1});
    CHECK_THROWS_AS(exact_moments(g, {.mode = ArithmeticMode::rational}), Error);
}

TEST_CASE("identity factor over Bernoulli is the i.i.d. case") {
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 1}), 1, {0, 1});
    const MomentSummary m = exact_moments(f);
    CHECK(m.exact->back() == Rational(1, 4));
    CHECK(m.lag_covariances.empty());
    CHECK(var_sn_exact(f, 10) == doctest::Approx(2.5));
}

TEST_CASE("coboundary factor has sigma2 = 0 and bounded Var(S_n)") {
    const std::vector<double> g = {0.0, 1.0, 3.0};
    const auto table = testing::coboundary_table(g, 0.5, 3, 2);
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 1, 2}), 2, table);
    const MomentSummary m = exact_moments(f);
    CHECK(m.sigma2 == 0.0);
    CHECK(m.degenerate());
    // Var(S_n) = Var(g(x_{n+1}) - g(x_1)) = 2 Var g for every n >= 1
    double eg = (0.0 * 1 + 1.0 * 1 + 3.0 * 2) / 4.0;
    double eg2 = (0.0 + 1.0 + 9.0 * 2) / 4.0;
    for (std::size_t n = 1; n <= 8; ++n) CHECK(var_sn_exact(f, n) == doctest::Approx(2 * (eg2 - eg * eg)));
}

TEST_CASE("var_sn_exact matches full sequence enumeration") {
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t a = 2 + trial % 2;
        const std::size_t ell = 1 + trial % 3;
        const auto p = testing::random_probs(eng, a);
        std::normal_distribution<double> z;
        std::vector<double> table(testing::power(a, ell));
        for (double& v : table) v = z(eng);
        std::vector<double> values(a);
        for (std::size_t i = 0; i < a; ++i) values[i] = static_cast<double>(i);
        const BlockFactor bf = BlockFactor::from_table(testing::finite_source(values, p), ell, table);
        for (std::size_t n = 1; n <= ell + 3 && n + ell - 1 <= 8; ++n) {
            CHECK(var_sn_exact(bf, n) == doctest::Approx(testing::var_sn_by_sequences(table, p, ell, n)).epsilon(1e-10));
        }
    }
}

TEST_CASE("lag covariances match joint enumeration") {
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t a = 2 + trial % 2;
        const std::size_t ell = 2 + trial % 2;
        const auto p = testing::random_probs(eng, a);
        std::uniform_int_distribution<int> z(-3, 3);
        std::vector<double> table(testing::power(a, ell));
        for (double& v : table) v = z(eng);
        std::vector<double> values(a);
        for (std::size_t i = 0; i < a; ++i) values[i] = static_cast<double>(i);
        const BlockFactor f = BlockFactor::from_table(testing::finite_source(values, p), ell, table);
        const MomentSummary m = exact_moments(f);
        CHECK(m.variance == doctest::Approx(testing::lag_covariance_naive(table, p, ell, 0)).epsilon(1e-12));
        for (std::size_t k = 1; k < ell; ++k) {
            CHECK(m.lag_covariances[k - 1] ==
                  doctest::Approx(testing::lag_covariance_naive(table, p, ell, k)).scale(1.0).epsilon(1e-12));
        }
        for (std::size_t n = 1; n <= ell + 3; ++n) {
            CHECK(var_sn_exact(f, n) == doctest::Approx(testing::var_sn_double_sum(table, p, ell, n)).scale(1.0).epsilon(1e-11));
        }
    }
}

TEST_CASE("enumeration budget is enforced") {
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 1}), 3, std::vector<double>(8, 1.0));
    CHECK_THROWS_AS(exact_moments(f, {.budget = 4}), Error);
    CHECK_NOTHROW(exact_moments(f, {.budget = 8}));
}

TEST_CASE("exact moments need a finite source") {
    const BlockFactor rn = catalog_factor("rn-example");
    CHECK_THROWS_AS(exact_moments(rn), Error);
}

TEST_CASE("Monte Carlo sigma2 agrees with the exact value") {
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 1}), 2, {0, 0, 0, 1});
    const std::size_t n = 200;
    const McVariance mc = sigma_squared_mc(f, n, {.reps = 4000, .seed = 7, .workers = 2});
    const double target = var_sn_exact(f, n) / static_cast<double>(n);
    CHECK(std::abs(mc.sigma2.value - target) < 5 * mc.sigma2.std_error);
    CHECK(mc.sigma2.std_error > 0.0);
    CHECK(mc.reps == 4000);
}

TEST_CASE("Monte Carlo estimates do not depend on the worker count") {
    const BlockFactor rn = catalog_factor("rn-example");
    const McVariance a = sigma_squared_mc(rn, 50, {.reps = 300, .seed = 3, .workers = 1});
    const McVariance b = sigma_squared_mc(rn, 50, {.reps = 300, .seed = 3, .workers = 4});
    CHECK(a.sigma2.value == b.sigma2.value);
    CHECK(a.sigma2.std_error == b.sigma2.std_error);
    CHECK(replica_sums(rn, 20, {.reps = 50, .seed = 9, .workers = 1}) ==
          replica_sums(rn, 20, {.reps = 50, .seed = 9, .workers = 3}));
}

TEST_CASE("rn-example has Var(S_n) = 2 and sigma2 = 0") {
    const BlockFactor rn = catalog_factor("rn-example");
    const McVariance mc = sigma_squared_mc(rn, 500, {.reps = 4000, .seed = 17, .workers = 0});
    CHECK(std::abs(mc.var_sn.value - 2.0) < 5 * mc.var_sn.std_error);
    CHECK(mc.sigma2.value == doctest::Approx(mc.var_sn.value / 500));
    CHECK(mc.sigma2.value < 0.01);
}

TEST_CASE("var_sn_exact rejects n = 0") {
    const BlockFactor f = BlockFactor::from_table(testing::exact_source({1, 1}), 1, {0, 1});
    CHECK_THROWS_AS(var_sn_exact(f, 0), Error);
}
