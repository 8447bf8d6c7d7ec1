#pragma once

#include <string>
#include <string_view>

#include "mdep/block_factor.hpp"

namespace mdep {

/// Reads a factor file:
///
///   {"source": {"kind": "finite-discrete",
///               "atoms": [{"value": 0, "p": "1/2"}, {"value": 1, "p": "1/2"}]},
///    "ell": 2,
///    "table": [0, 0, 0, 1],
///    "name": "product"}
///
/// or {"catalog": "rn-example"}. Probabilities and table entries may be
/// numbers or exact "p/q" strings. The table lists f over all windows in
/// mixed-radix order of the atom indices, last coordinate fastest.
/// Parse errors carry a line:column or a field path.
BlockFactor parse_factor(std::string_view text);
BlockFactor load_factor(const std::string& path);

/// Inverse of parse_factor for tabulated finite factors; exact entries are
/// written as "p/q" strings.
std::string factor_to_json(const BlockFactor& factor);

}  // namespace mdep
