#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdep {

/// Ordered rooted tree as its depth-first (preorder) outdegree sequence.
class OrderedTree {
public:
    /// Parses "2,0,0" (the cherry). Whitespace around entries is ignored.
    static OrderedTree parse(std::string_view text);
    static OrderedTree from_degrees(std::vector<std::uint32_t> degrees);
    static OrderedTree leaf() { return from_degrees({0}); }

    std::size_t size() const noexcept { return degrees_.size(); }
    const std::vector<std::uint32_t>& degrees() const noexcept { return degrees_; }
    std::string to_string() const;

    friend bool operator==(const OrderedTree&, const OrderedTree&) = default;
    friend auto operator<=>(const OrderedTree&, const OrderedTree&) = default;

private:
    std::vector<std::uint32_t> degrees_;
};

/// Sum of d_i is length-1 and every proper prefix keeps sum(d_i - 1) >= 0.
bool is_tree_degree_sequence(std::span<const std::uint32_t> degrees);

/// Nodes whose fringe subtree equals `pattern`, by walking the tree.
std::size_t count_fringe(const OrderedTree& tree, const OrderedTree& pattern);

}  // namespace mdep
