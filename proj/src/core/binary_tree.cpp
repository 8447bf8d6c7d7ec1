#include "mdep/binary_tree.hpp"

#include <algorithm>

#include "mdep/error.hpp"

namespace mdep {

namespace {
constexpr std::size_t kNil = static_cast<std::size_t>(-1);

std::vector<std::uint8_t> emit_preorder(std::size_t root, const std::vector<std::size_t>& left,
                                        const std::vector<std::size_t>& right) {
    std::vector<std::uint8_t> code;
    code.reserve(2 * left.size() + 1);
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (v == kNil) {
            code.push_back(0);
            continue;
        }
        code.push_back(1);
        stack.push_back(right[v]);
        stack.push_back(left[v]);
    }
    return code;
}
}  // namespace

bool is_binary_code(std::span<const std::uint8_t> code) {
    std::size_t open = 1;
    for (std::uint8_t s : code) {
        if (open == 0 || s > 1) return false;
        open = s == 1 ? open + 1 : open - 1;
    }
    return open == 0;
}

BinaryTree BinaryTree::parse(std::string_view text) {
    std::vector<std::uint8_t> code;
    for (char c : text) {
        if (c != '0' && c != '1') {
            fail(ErrorKind::parse, "binary tree code may only contain 0 and 1: '" + std::string(text) + "'");
        }
        code.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (!is_binary_code(code)) {
        fail(ErrorKind::parse, "'" + std::string(text) + "' is not a complete preorder tree code");
    }
    BinaryTree t;
    t.code_ = std::move(code);
    return t;
}

BinaryTree BinaryTree::from_code(std::vector<std::uint8_t> code) {
    require(is_binary_code(code), "not a complete preorder tree code");
    BinaryTree t;
    t.code_ = std::move(code);
    return t;
}

std::string BinaryTree::to_string() const {
    std::string s;
    for (std::uint8_t c : code_) s.push_back(static_cast<char>('0' + c));
    return s;
}

std::vector<std::size_t> BinaryTree::subtree_sizes() const {
    // a node's subtree spans code positions [i, i + 2 size + 1)
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < code_.size(); ++i) {
        if (code_[i] == 0) continue;
        std::size_t open = 1;
        std::size_t j = i;
        std::size_t nodes = 0;
        while (open > 0) {
            if (code_[j] == 1) {
                ++nodes;
                ++open;
            } else {
                --open;
            }
            ++j;
        }
        sizes.push_back(nodes);
    }
    return sizes;
}

BinaryTree bst_from_keys(std::span<const double> keys) {
    const std::size_t n = keys.size();
    if (n == 0) return BinaryTree{};
    std::vector<std::size_t> left(n, kNil);
    std::vector<std::size_t> right(n, kNil);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t v = 0;
        while (true) {
            if (keys[i] == keys[v]) fail(ErrorKind::domain, "duplicate key " + std::to_string(keys[i]));
            std::size_t& child = keys[i] < keys[v] ? left[v] : right[v];
            if (child == kNil) {
                child = i;
                break;
            }
            v = child;
        }
    }
    return BinaryTree::from_code(emit_preorder(0, left, right));
}

BinaryTree min_rooted_tree(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return BinaryTree{};
    std::vector<std::size_t> left(n, kNil);
    std::vector<std::size_t> right(n, kNil);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t last = kNil;
        while (!stack.empty() && values[stack.back()] > values[i]) {
            last = stack.back();
            stack.pop_back();
        }
        if (!stack.empty() && values[stack.back()] == values[i]) {
            fail(ErrorKind::domain, "duplicate value " + std::to_string(values[i]));
        }
        left[i] = last;
        if (!stack.empty()) right[stack.back()] = i;
        stack.push_back(i);
    }
    return BinaryTree::from_code(emit_preorder(stack.front(), left, right));
}

std::size_t count_fringe(const BinaryTree& tree, const BinaryTree& pattern) {
    require(!pattern.empty(), "fringe pattern must have at least one node");
    const auto& code = tree.code();
    const auto& pat = pattern.code();
    if (pat.size() > code.size()) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + pat.size() <= code.size(); ++i) {
        // complete codes are prefix-free, so a match at a node is exactly its subtree
        if (code[i] == 1 && std::equal(pat.begin(), pat.end(), code.begin() + static_cast<std::ptrdiff_t>(i))) {
            ++count;
        }
    }
    return count;
}

double bst_shape_probability(const BinaryTree& tree) {
    double p = 1.0;
    for (std::size_t s : tree.subtree_sizes()) p /= static_cast<double>(s);
    return p;
}

}  // namespace mdep
