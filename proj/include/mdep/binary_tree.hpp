#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdep {

/// Binary tree shape in preorder extended encoding: 1 for a node, 0 for an
/// empty child slot, 2|T|+1 symbols. Equal codes mean equal shapes.
class BinaryTree {
public:
    BinaryTree() : code_{0} {}

    /// Parses a string over {1,0}, e.g. "100" for a single node.
    static BinaryTree parse(std::string_view text);
    static BinaryTree from_code(std::vector<std::uint8_t> code);
    static BinaryTree leaf() { return from_code({1, 0, 0}); }

    std::size_t size() const noexcept { return (code_.size() - 1) / 2; }
    bool empty() const noexcept { return code_.size() == 1; }
    const std::vector<std::uint8_t>& code() const noexcept { return code_; }
    std::string to_string() const;

    /// Subtree sizes in preorder.
    std::vector<std::size_t> subtree_sizes() const;

    friend bool operator==(const BinaryTree&, const BinaryTree&) = default;
    friend auto operator<=>(const BinaryTree&, const BinaryTree&) = default;

private:
    std::vector<std::uint8_t> code_;
};

/// True if `code` is a complete preorder extended code.
bool is_binary_code(std::span<const std::uint8_t> code);

/// Shape of the binary search tree obtained by inserting `keys` in order.
/// Duplicate keys are a domain error.
BinaryTree bst_from_keys(std::span<const double> keys);

/// Tree whose root is the position of the minimum, with the positions before
/// it forming the left subtree and those after it the right subtree.
/// Equals bst_from_keys of the positions sorted by value. Values must be distinct.
BinaryTree min_rooted_tree(std::span<const double> values);

/// Number of nodes whose fringe subtree equals `pattern`.
std::size_t count_fringe(const BinaryTree& tree, const BinaryTree& pattern);

/// Number of labelled orderings producing `tree` divided by |T|!, i.e. the
/// probability a uniform random BST of size |T| has this shape.
double bst_shape_probability(const BinaryTree& tree);

}  // namespace mdep
