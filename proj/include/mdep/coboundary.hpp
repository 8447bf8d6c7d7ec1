#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdep/block_factor.hpp"
#include "mdep/stats.hpp"
#include "mdep/variance.hpp"

namespace mdep {

enum class Verdict { degenerate, nondegenerate };

const char* to_string(Verdict v) noexcept;

struct DecomposeOptions {
    ArithmeticMode mode = ArithmeticMode::automatic;
    std::size_t budget = kDefaultEnumerationBudget;
    double tolerance = kDefaultTolerance;
    /// Traversal start vertex (code of an (ell-1)-window) and neighbour order.
    /// Different choices shift g by a constant only.
    std::size_t root = 0;
    bool reverse_neighbours = false;
};

/// Outcome of the potential construction on the window graph.
///
/// Vertices are (ell-1)-windows, edges are ell-windows (x_1..x_ell) from
/// (x_1..x_{ell-1}) to (x_2..x_ell) with weight f(x) - mu. Degenerate means
/// f(x) = g(x_2..x_ell) - g(x_1..x_{ell-1}) + mu on every edge.
struct CoboundaryResult {
    Verdict verdict = Verdict::degenerate;
    std::size_t ell = 1;
    std::size_t alphabet = 0;
    double mu = 0.0;
    /// g by mixed-radix code of the (ell-1)-window; filled iff degenerate.
    std::vector<double> g;
    /// Closed walk as a sequence of ell-window codes; filled iff nondegenerate.
    std::vector<std::size_t> witness;
    /// Sum of (f - mu) along the witness.
    double witness_weight = 0.0;
    /// Largest |g(head) - g(tail) - weight| over all edges.
    double max_residual = 0.0;
    bool rational = false;
    /// Exact mu, g and witness weight in rational mode.
    std::optional<Rational> exact_mu;
    std::optional<std::vector<Rational>> exact_g;
    std::optional<Rational> exact_witness_weight;

    bool degenerate() const noexcept { return verdict == Verdict::degenerate; }
};

CoboundaryResult coboundary_decompose(const BlockFactor& factor, const DecomposeOptions& options = {});

/// Atom values of a window code.
std::vector<double> window_values(const Source& source, std::size_t code, std::size_t length);

struct Rc2Result {
    bool differs = false;
    double s_a = 0.0;
    double s_b = 0.0;
};

/// Evaluates S_n on (left, middle_a, right) and (left, middle_b, right).
///
/// Both boundaries hold ell-1 source values, the middles n-ell+1 >= 1.
/// Lengths count doubles (source dimension times values). A difference
/// beyond `tolerance` shows S_n is not a function of the boundary alone,
/// hence sigma^2 > 0. For continuous sources the factor must be locally
/// constant so that the configuration has positive-probability neighbourhoods.
Rc2Result rc2_witness_check(const BlockFactor& factor, std::span<const double> left, std::span<const double> right,
                            std::span<const double> middle_a, std::span<const double> middle_b,
                            double tolerance = kDefaultTolerance);

/// Sum of the factor over all windows of a full configuration.
double configuration_sum(const BlockFactor& factor, std::span<const double> values);

/// Monte Carlo estimate of g(window) - E g via Cesaro means of centred
/// partial sums ending at the conditioned window.
///
/// Per replica: xi_{k-n}..xi_{k+ell-1} drawn i.i.d. with xi_{k+1..k+ell-1}
/// fixed to `window`, then (n+1)^{-1} sum_{j=k-n}^{k} S_{j,k} with
/// S_{j,k} = sum_{i=j}^{k} (X_i - mu). `mean` overrides mu; otherwise mu is
/// exact for finite sources, the catalog mean when known, or else estimated
/// from a pilot run of reps * n windows.
Estimate cesaro_coboundary_estimate(const BlockFactor& factor, std::span<const double> window, std::size_t n,
                                    const McOptions& options, std::optional<double> mean = std::nullopt);

}  // namespace mdep
