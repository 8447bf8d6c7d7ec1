#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdep/binary_tree.hpp"
#include "mdep/block_factor.hpp"
#include "mdep/coboundary.hpp"
#include "mdep/stats.hpp"
#include "mdep/subtree_statistic.hpp"
#include "mdep/variance.hpp"

namespace mdep {

using BinaryStatistic = LinearSubtreeStatistic<BinaryTree>;

/// U_1..U_n from substream 0 of `seed` (the draws sample_path would make
/// for a uniform source).
std::vector<double> bst_uniforms(std::size_t n, std::uint64_t seed);

/// BST on keys 1..n inserted in increasing order of u: a uniformly random
/// binary search tree when u is i.i.d. uniform.
BinaryTree bst_from_uniforms(std::span<const double> u);
BinaryTree bst_devroye_tree(std::size_t n, std::uint64_t seed);

/// 1 iff both end entries of the window are below every interior entry and
/// the interior, read as a uniform sequence, builds `pattern`.
/// Window length must be |pattern| + 2 and the interior must be distinct;
/// the two ends may coincide (they are both 0 when the window is the whole
/// padded sequence).
int bst_fringe_indicator(const BinaryTree& pattern, std::span<const double> window);

/// n_T of the tree of `u`, as the window sum over U_0..U_{n+1} with
/// U_0 = U_{n+1} = 0.
std::size_t bst_window_count(std::span<const double> u, const BinaryTree& pattern);
std::size_t bst_subtree_count(std::size_t n, const BinaryTree& pattern, std::uint64_t seed);

/// P(f_T = 1) for i.i.d. uniforms: 2/((k+1)(k+2)) times the shape probability.
double bst_pattern_probability(const BinaryTree& pattern);

/// f_T over uniform(0,1) with ell = |T| + 2 (boundary windows dropped).
BlockFactor bst_fringe_factor(const BinaryTree& pattern);
/// sum_j a_j f_{T_j} with ell = max |T_j| + 2.
BlockFactor bst_linear_factor(const BinaryStatistic& stat);

/// Two increasing-except-one-block sequences whose trees differ by one copy of T_1.
struct BstWitness {
    std::size_t n = 0;
    std::size_t ell = 0;
    /// 1-based positions ell..ell+|T_1| were permuted.
    std::size_t block_begin = 0;
    std::vector<double> u_prime;         ///< increasing: a right path
    std::vector<double> u_double_prime;  ///< right path with T_1 hung left of vertex ell
    std::vector<std::size_t> counts_prime;
    std::vector<std::size_t> counts_double_prime;
    double f_prime = 0.0;
    double f_double_prime = 0.0;
};

/// Domain error unless n > 3 (max |T_j| + 2).
BstWitness bst_witness_configuration(const BinaryStatistic& stat, std::size_t n);

/// Splits both witness sequences into shared boundaries and middles and
/// runs rc2_witness_check with the statistic's block factor.
Rc2Result bst_witness_check(const BinaryStatistic& stat, const BstWitness& witness);

struct BstDensity {
    BinaryTree pattern;
    /// mean of n_T / n over replicas
    Estimate density;
    /// limit of n_T / n
    double limit = 0.0;
};

/// Replica r draws U from substream r of the seed and counts every pattern.
std::vector<BstDensity> bst_density_mc(const std::vector<BinaryTree>& patterns, std::size_t n,
                                       const McOptions& options);

}  // namespace mdep
