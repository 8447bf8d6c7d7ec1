#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mdep {

/// Point estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double mean(std::span<const double> x);
/// Unbiased (divisor R-1).
double sample_variance(std::span<const double> x);
double sample_covariance(std::span<const double> x, std::span<const double> y);

/// Mean and sd/sqrt(R).
Estimate mean_estimate(std::span<const double> x);
/// Sample variance with its delete-one jackknife standard error.
Estimate jackknife_variance(std::span<const double> x);
/// Sample covariance with its delete-one jackknife standard error.
Estimate jackknife_covariance(std::span<const double> x, std::span<const double> y);

double normal_cdf(double z);
double normal_quantile(double p);

/// Mid-distribution Kolmogorov distance between the sample and N(mean, sd^2):
/// max over sample points of |Phi - (F(x-) + F(x)) / 2|. Never exceeds the
/// classical statistic, and stays small on lattice data.
double ks_normal_distance(std::vector<double> sample, double mean, double sd);

/// Two-sample Kolmogorov-Smirnov statistic (ties processed jointly).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov critical value c(alpha) = sqrt(-ln(alpha/2)/2).
double kolmogorov_critical(double alpha);

double chi_square_quantile(double probability, double degrees_of_freedom);

/// Two-sided tail probability of a 5-sigma normal deviation.
inline constexpr double kFiveSigmaAlpha = 5.733031437583878e-07;

}  // namespace mdep
