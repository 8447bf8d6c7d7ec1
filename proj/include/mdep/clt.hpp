#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdep/block_factor.hpp"
#include "mdep/stats.hpp"
#include "mdep/variance.hpp"

namespace mdep {

/// Bin counts of standardized S_n over [lo, hi).
struct Histogram {
    double lo = -4.0;
    double hi = 4.0;
    std::vector<std::size_t> counts;
    std::size_t underflow = 0;
    std::size_t overflow = 0;
};

struct CltOptions {
    std::vector<std::size_t> n_list;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    /// Family-wise level of the CDF-distance check per n.
    double alpha = kFiveSigmaAlpha;
    std::size_t bins = 40;
};

struct CltRow {
    std::size_t n = 0;
    /// Root seed of this n (derived from the run seed and the list index).
    std::uint64_t seed = 0;
    Estimate mean_sn;
    Estimate var_sn;
    Estimate var_over_n;
    /// Standardized moments of (S_n - mean) / sd, sd with divisor reps.
    double m2 = 1.0;
    Estimate m4;
    double ks_distance = 0.0;
    double ks_threshold = 0.0;
    bool m4_pass = false;
    bool ks_pass = false;
    bool pass = false;
    Histogram histogram;
};

struct SimulationReport {
    std::string factor;
    std::size_t ell = 1;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    double alpha = kFiveSigmaAlpha;
    std::vector<CltRow> rows;
};

/// Draws `reps` paths per n and reports normality diagnostics of S_n:
/// |m4 - 3| within 5 standard errors and the Kolmogorov distance of the
/// standardized sample below c(alpha)/sqrt(reps).
SimulationReport simulate_clt(const BlockFactor& factor, const CltOptions& options);

struct DegenerateCheck {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t reps = 0;
    Estimate var1;
    Estimate var2;
    /// Two-sample Kolmogorov distance of the centred samples.
    double distance = 0.0;
    double threshold = 0.0;
    double alpha = 0.0;
    bool pass = false;
    /// Distances of each sample to N(0, reference) when one was given.
    std::optional<double> reference_variance;
    double reference_distance1 = 0.0;
    double reference_distance2 = 0.0;
    double reference_threshold = 0.0;
    bool reference_pass = false;
};

/// Default level of the two-sample comparison.
inline constexpr double kTwoSampleAlpha = 1e-3;

/// Compares S_{n1} - E S_{n1} with an independent sample of S_{n2} - E S_{n2}.
/// E X_0 comes from `mean`, the factor's declared mean, exact enumeration,
/// or the pooled sample, in that order.
DegenerateCheck degenerate_distribution_check(const BlockFactor& factor, std::size_t n1, std::size_t n2,
                                              const McOptions& options,
                                              std::optional<double> reference_variance = std::nullopt,
                                              std::optional<double> mean = std::nullopt,
                                              double alpha = kTwoSampleAlpha);

struct RnMoments {
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    Estimate m2;
    Estimate m4;
    /// m4 - 3 m2^2 with a delta-method standard error.
    Estimate excess;
};

/// Samples X = sign(U_2 - U_3)|N_2| - sign(U_1 - U_2)|N_1| and estimates E X^2, E X^4.
RnMoments rn_example_moments(std::size_t reps, std::uint64_t seed, unsigned workers = 0);

struct CovarianceEstimate {
    std::vector<std::string> labels;
    std::size_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    /// n^{-1} Cov(S_n^(i), S_n^(j)), symmetric.
    std::vector<std::vector<double>> matrix;
    std::vector<std::vector<double>> std_errors;
    double min_eigenvalue = 0.0;
    /// 95% percentile bootstrap interval for the minimum eigenvalue.
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t bootstrap = 0;
};

inline constexpr std::size_t kBootstrapResamples = 200;

/// Coupled paths: replica r draws one source path of length n + max ell - 1
/// and evaluates every factor on it. All factors must share one source.
CovarianceEstimate covariance_matrix_mc(const std::vector<BlockFactor>& factors, std::size_t n,
                                        const McOptions& options,
                                        std::size_t bootstrap = kBootstrapResamples);

/// Smallest eigenvalue of the symmetrized matrix.
double min_eigenvalue(const std::vector<std::vector<double>>& matrix);

}  // namespace mdep
