#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mdep/error.hpp"

namespace mdep {

/// F = sum_j a_j n_{T_j} for distinct fringe patterns T_j.
///
/// Terms with a zero coefficient are dropped; the rest are sorted by size
/// (then by code), so no later tree is a proper subtree of the first.
template <class Tree>
class LinearSubtreeStatistic {
public:
    struct Term {
        Tree tree;
        double coefficient = 1.0;
    };

    explicit LinearSubtreeStatistic(std::vector<Term> terms) {
        for (auto& t : terms) {
            require(t.tree.size() >= 1, "fringe patterns need at least one node");
            if (t.coefficient != 0.0) terms_.push_back(std::move(t));
        }
        require(!terms_.empty(), "linear subtree statistic needs a nonzero coefficient");
        std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
            if (a.tree.size() != b.tree.size()) return a.tree.size() < b.tree.size();
            return a.tree < b.tree;
        });
        for (std::size_t i = 1; i < terms_.size(); ++i) {
            require(!(terms_[i].tree == terms_[i - 1].tree), "fringe patterns must be pairwise distinct");
        }
    }

    /// Single pattern with coefficient 1.
    explicit LinearSubtreeStatistic(Tree tree) : LinearSubtreeStatistic(std::vector<Term>{{std::move(tree), 1.0}}) {}

    const std::vector<Term>& terms() const noexcept { return terms_; }
    const Term& first() const noexcept { return terms_.front(); }
    std::size_t max_size() const noexcept { return terms_.back().tree.size(); }

private:
    std::vector<Term> terms_;
};

}  // namespace mdep
