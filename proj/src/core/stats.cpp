#include "mdep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "mdep/error.hpp"

namespace mdep {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double mean(std::span<const double> x) {
    require(!x.empty(), "mean of an empty sample");
    CompensatedSum s;
    for (double v : x) s.add(v);
    return s.value() / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) { return sample_covariance(x, x); }

double sample_covariance(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "covariance of samples with different sizes");
    require(x.size() >= 2, "covariance needs at least two observations");
    const double mx = mean(x);
    const double my = mean(y);
    CompensatedSum s;
    for (std::size_t i = 0; i < x.size(); ++i) s.add((x[i] - mx) * (y[i] - my));
    return s.value() / static_cast<double>(x.size() - 1);
}

Estimate mean_estimate(std::span<const double> x) {
    const double m = mean(x);
    if (x.size() < 2) return {m, 0.0};
    return {m, std::sqrt(sample_variance(x) / static_cast<double>(x.size()))};
}

Estimate jackknife_covariance(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "covariance of samples with different sizes");
    const std::size_t r = x.size();
    require(r >= 2, "covariance needs at least two observations");
    const double mx = mean(x);
    const double my = mean(y);
    CompensatedSum cs;
    for (std::size_t i = 0; i < r; ++i) cs.add((x[i] - mx) * (y[i] - my));
    const double c = cs.value();
    const double rd = static_cast<double>(r);
    const double estimate = c / (rd - 1.0);
    if (r < 3) {
        // delete-one replicates are undefined; fall back to the normal-theory error
        return {estimate, std::abs(estimate) * std::sqrt(2.0 / (rd - 1.0))};
    }
    // theta_(i) = (C - d_i e_i R/(R-1)) / (R-2); only the d_i e_i part varies
    CompensatedSum ps;
    std::vector<double> prod(r);
    for (std::size_t i = 0; i < r; ++i) {
        prod[i] = (x[i] - mx) * (y[i] - my);
        ps.add(prod[i]);
    }
    const double pbar = ps.value() / rd;
    const double scale = rd / ((rd - 1.0) * (rd - 2.0));
    CompensatedSum ss;
    for (double p : prod) ss.add((p - pbar) * (p - pbar));
    const double se = scale * std::sqrt((rd - 1.0) / rd * ss.value());
    return {estimate, se};
}

Estimate jackknife_variance(std::span<const double> x) { return jackknife_covariance(x, x); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "normal quantile needs p in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double ks_normal_distance(std::vector<double> sample, double mu, double sd) {
    require(!sample.empty(), "empty sample");
    require(sd > 0.0, "reference standard deviation must be positive");
    std::sort(sample.begin(), sample.end());
    const double r = static_cast<double>(sample.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < sample.size()) {
        std::size_t j = i;
        while (j < sample.size() && sample[j] == sample[i]) ++j;
        const double f_mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) / r;
        d = std::max(d, std::abs(normal_cdf((sample[i] - mu) / sd) - f_mid));
        i = j;
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    require(!a.empty() && !b.empty(), "empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double v;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
            v = a[i];
        } else {
            v = b[j];
        }
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_critical(double alpha) {
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double chi_square_quantile(double probability, double degrees_of_freedom) {
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(degrees_of_freedom), probability);
}

}  // namespace mdep
