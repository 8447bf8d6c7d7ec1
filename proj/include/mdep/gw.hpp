#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mdep/block_factor.hpp"
#include "mdep/coboundary.hpp"
#include "mdep/offspring.hpp"
#include "mdep/ordered_tree.hpp"
#include "mdep/stats.hpp"
#include "mdep/subtree_statistic.hpp"
#include "mdep/variance.hpp"

namespace mdep {

using OrderedStatistic = LinearSubtreeStatistic<OrderedTree>;

/// Sequences drawn before gw_conditioned_degrees gives up.
inline constexpr std::size_t kDefaultRejectionBudget = 2'000'000;

/// 1 iff the window equals the degree sequence of `pattern`; arity error
/// unless the window length is |pattern|.
int gw_degree_indicator(const OrderedTree& pattern, std::span<const std::int64_t> window);
int gw_degree_indicator(const OrderedTree& pattern, std::span<const double> window);

/// The unique cyclic rotation of xi (sum n-1) that is a depth-first degree
/// sequence: start right after the first minimum of the partial sums of
/// xi_i - 1. Domain error if the sum is not n-1.
OrderedTree gw_rotate_to_tree(std::span<const std::int64_t> xi);

/// Degree sequence of a GW tree conditioned on n nodes: rejection on
/// Z_n = n-1, then the cycle-lemma rotation. Resource error (with the
/// observed acceptance rate) after `budget` rejected sequences.
OrderedTree gw_conditioned_degrees(const OffspringDistribution& offspring, std::size_t n, std::mt19937_64& eng,
                                   std::size_t budget = kDefaultRejectionBudget);
/// Uses substream 0 of `seed`.
OrderedTree gw_conditioned_degrees(const OffspringDistribution& offspring, std::size_t n, std::uint64_t seed,
                                   std::size_t budget = kDefaultRejectionBudget);

/// Number of the n cyclic windows of the degree sequence matching `pattern`.
std::size_t gw_cyclic_count(const OrderedTree& tree, const OrderedTree& pattern);
std::size_t gw_subtree_count(std::size_t n, const OrderedTree& pattern, const OffspringDistribution& offspring,
                             std::uint64_t seed);

/// P(a fringe window equals `pattern`) = prod_i p_{d_i} under the true law.
double gw_pattern_probability(const OrderedTree& pattern, const OffspringDistribution& offspring);

/// Centering constants of X_i = f(xi_i..) - alpha xi_i + beta.
struct AlphaBeta {
    double alpha = 0.0;
    double beta = 0.0;
    double mean_f = 0.0;
    double mean_xi = 0.0;
    double var_xi = 0.0;
    std::optional<Rational> exact_alpha;
    std::optional<Rational> exact_beta;
};

/// alpha = sum_j Cov(f, xi_j) / Var xi and beta = alpha E xi - E f under the
/// exact-computation law of `offspring` (unsupported error when untruncated).
AlphaBeta gw_alpha_beta(const OrderedStatistic& stat, const OffspringDistribution& offspring);
/// Same by enumerating every window of a tabulated factor over an
/// integer-valued finite source.
AlphaBeta gw_alpha_beta(const BlockFactor& factor, std::size_t budget = kDefaultEnumerationBudget);

/// f = sum_j a_j f_{T_j} over `source`, ell = max |T_j|. Tabulated when the
/// source is finite.
BlockFactor gw_statistic_factor(const OrderedStatistic& stat, SourcePtr source,
                                std::size_t budget = kDefaultEnumerationBudget);
/// X = f - alpha xi_0 + beta.
BlockFactor gw_centered_factor(const BlockFactor& raw, const AlphaBeta& ab);

enum class GwMode { exact, mc };

struct GwSigma {
    GwMode mode = GwMode::exact;
    AlphaBeta ab;
    double sigma2 = 0.0;
    /// Monte Carlo standard error; 0 in exact mode.
    double std_error = 0.0;
    /// Computed from a truncated law.
    bool approximate = false;
    double truncated_mass = 0.0;
    std::optional<Rational> exact_sigma2;
};

/// sigma^2 of the centered factor: exact moments over the exact-computation
/// law, or sigma_squared_mc at length n over the true law.
GwSigma gw_sigma_squared(const OrderedStatistic& stat, const OffspringDistribution& offspring, GwMode mode,
                         std::size_t n = 0, const McOptions& options = {});

/// Cov(S_n - alpha Z_n, Z_n) / n over unconditioned i.i.d. xi with cyclic
/// windows; jackknife standard error.
Estimate gw_centering_covariance_mc(const OrderedStatistic& stat, const OffspringDistribution& offspring,
                                    std::size_t n, const McOptions& options);

struct GwDensity {
    OrderedTree pattern;
    Estimate density;
    /// prod_i p_{d_i}
    double limit = 0.0;
};

/// n_T / n over conditioned trees; replica r uses substream r of the seed.
std::vector<GwDensity> gw_density_mc(const std::vector<OrderedTree>& patterns, const OffspringDistribution& offspring,
                                     std::size_t n, const McOptions& options,
                                     std::size_t budget = kDefaultRejectionBudget);

struct GwConstantCheck {
    std::int64_t degree = 0;
    /// Pattern matches in the all-`degree` configuration (always 0).
    std::size_t matches = 0;
    /// X_i on that configuration: -alpha j + beta.
    double x_value = 0.0;
};

/// Executable form of the positivity argument for a linear statistic.
struct GwCertificate {
    AlphaBeta ab;
    /// One per positive support value.
    std::vector<GwConstantCheck> constant_checks;
    /// With two positive degrees, sigma^2 = 0 would force alpha = beta = 0.
    bool forces_zero_alpha_beta = false;
    std::int64_t background = 0;
    /// Index into the middle where the degree sequence of T_1 starts; empty
    /// when the fallback pair (a block of another constant degree) was used.
    std::optional<std::size_t> embedded_at;
    std::int64_t replacement = 0;
    std::vector<double> left;
    std::vector<double> right;
    std::vector<double> middle_a;
    std::vector<double> middle_b;
    /// sum_j a_j (window count of T_j) on each configuration.
    double f_a = 0.0;
    double f_b = 0.0;
    Rc2Result rc2;
    bool positive = false;
};

/// Unsupported error when the support lacks 0 or has fewer than two
/// positive points (the xi in {0, r} exclusion).
GwCertificate gw_degeneracy_argument(const OrderedStatistic& stat, const OffspringDistribution& offspring);

}  // namespace mdep
