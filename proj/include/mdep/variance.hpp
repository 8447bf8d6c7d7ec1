#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdep/block_factor.hpp"
#include "mdep/rational.hpp"
#include "mdep/stats.hpp"

namespace mdep {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultEnumerationBudget = std::size_t{1} << 24;

enum class ArithmeticMode {
    automatic,  ///< rational when the table and the probabilities are exact
    floating,
    rational,
};

struct ExactOptions {
    ArithmeticMode mode = ArithmeticMode::automatic;
    /// Largest number of ell-windows (alphabet^ell) enumerated.
    std::size_t budget = kDefaultEnumerationBudget;
    double tolerance = kDefaultTolerance;
};

/// First and second moments of a block factor under its finite source.
struct MomentSummary {
    std::size_t ell = 1;
    double mean = 0.0;
    double variance = 0.0;
    /// Cov(X_0, X_k) for k = 1..ell-1.
    std::vector<double> lag_covariances;
    /// Var(X_0) + 2 sum_k Cov(X_0, X_k); clamped to 0 within tolerance.
    double sigma2 = 0.0;
    /// sigma2 before clamping.
    double sigma2_raw = 0.0;
    bool rational = false;
    /// Exact values in rational mode: mean, Var, Cov_1..Cov_m, sigma2.
    std::optional<std::vector<Rational>> exact;

    bool degenerate() const noexcept { return sigma2 == 0.0; }
};

/// E X_0 and Cov(X_0, X_k) by exact summation over the source law.
///
/// Cov(X_0, X_k) only involves the ell - k source values shared by the two
/// windows once the outer coordinates are summed out, so the cost is
/// O(ell * alphabet^ell) rather than alphabet^(2 ell - 1).
MomentSummary exact_moments(const BlockFactor& factor, const ExactOptions& options = {});

/// Var(S_n): n sigma^2 - 2 sum_k k Cov(X_0,X_k) for n >= m, the direct
/// covariance double sum below that.
double var_sn_exact(const BlockFactor& factor, std::size_t n, const ExactOptions& options = {});
double var_sn_from_moments(const MomentSummary& moments, std::size_t n);

struct McOptions {
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    /// 0 = one per hardware thread. Results do not depend on it.
    unsigned workers = 0;
};

struct McVariance {
    std::size_t n = 0;
    std::size_t reps = 0;
    /// Var(S_n) / n; its mean is sigma^2 + O(1/n) (see var_sn_exact).
    Estimate sigma2;
    Estimate var_sn;
    Estimate mean_sn;
};

/// Monte Carlo estimate of Var(S_n)/n from independent paths, with
/// jackknife standard error. Not bias-corrected: the estimator targets
/// Var(S_n)/n = sigma^2 - (2/n) sum_k k Cov(X_0,X_k).
McVariance sigma_squared_mc(const BlockFactor& factor, std::size_t n, const McOptions& options);

/// S_n of replica r = 0..reps-1 (replica r uses substream r of the seed).
std::vector<double> replica_sums(const BlockFactor& factor, std::size_t n, const McOptions& options);

}  // namespace mdep
