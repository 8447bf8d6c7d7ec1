#include "mdep/ordered_tree.hpp"

#include <algorithm>
#include <charconv>

#include "mdep/error.hpp"

namespace mdep {

bool is_tree_degree_sequence(std::span<const std::uint32_t> degrees) {
    if (degrees.empty()) return false;
    long long walk = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        walk += static_cast<long long>(degrees[i]) - 1;
        if (i + 1 < degrees.size() && walk < 0) return false;
    }
    return walk == -1;
}

OrderedTree OrderedTree::parse(std::string_view text) {
    std::vector<std::uint32_t> degrees;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        std::uint32_t d = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            fail(ErrorKind::parse, "bad degree '" + std::string(item) + "' in '" + std::string(text) + "'");
        }
        degrees.push_back(d);
        pos = comma + 1;
    }
    if (!is_tree_degree_sequence(degrees)) {
        fail(ErrorKind::parse, "'" + std::string(text) + "' is not a depth-first degree sequence of a tree");
    }
    OrderedTree t;
    t.degrees_ = std::move(degrees);
    return t;
}

OrderedTree OrderedTree::from_degrees(std::vector<std::uint32_t> degrees) {
    require(is_tree_degree_sequence(degrees), "not a depth-first degree sequence of a tree");
    OrderedTree t;
    t.degrees_ = std::move(degrees);
    return t;
}

std::string OrderedTree::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(degrees_[i]);
    }
    return s;
}

std::size_t count_fringe(const OrderedTree& tree, const OrderedTree& pattern) {
    // subtree of node i spans [i, end[i]); computed right to left
    const auto& d = tree.degrees();
    const std::size_t n = d.size();
    std::vector<std::size_t> end(n);
    for (std::size_t i = n; i-- > 0;) {
        std::size_t j = i + 1;
        for (std::uint32_t c = 0; c < d[i]; ++c) j = end[j];
        end[i] = j;
    }
    const auto& p = pattern.degrees();
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (end[i] - i == p.size() && std::equal(p.begin(), p.end(), d.begin() + static_cast<std::ptrdiff_t>(i))) {
            ++count;
        }
    }
    return count;
}

}  // namespace mdep
