#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mdep/block_factor.hpp"

namespace mdep {

SourcePtr uniform_source();

/// ell = 1, f(x) = x over uniform(0,1).
BlockFactor identity_factor();
/// ell = 2, f(x1, x2) = x2 - x1 over uniform(0,1); a coboundary with g(x) = x.
BlockFactor difference_factor();
/// ell = 2, f(x1, x2) = x1 * x2 over uniform(0,1).
BlockFactor product_factor();

/// The 3-block factor X_k = Y_k - Y_{k-1}, Y_k = sign(U_k - U_{k+1}) |N_k|,
/// over the composite source (U, N) with U uniform and N standard normal.
/// S_n ~ N(0, 2) for n >= 2 although X_k itself is not normal.
BlockFactor rn_example_factor();

/// Closed-form targets for the factor above.
inline constexpr double kRnSecondMoment = 2.4244131815783876;   // 2 + 4/(3 pi)
inline constexpr double kRnFourthMoment = 15.395305452627101;   // 12 + 32/(3 pi)

/// Names accepted by catalog_factor: identity, difference, product,
/// rn-example, bst:<preorder code> (e.g. bst:100 for the leaf).
BlockFactor catalog_factor(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace mdep
