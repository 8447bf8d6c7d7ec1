#include "mdep/bst.hpp"

#include <algorithm>
#include <numeric>

#include "mdep/catalog.hpp"
#include "mdep/error.hpp"
#include "mdep/parallel.hpp"
#include "mdep/rng.hpp"

namespace mdep {

std::vector<double> bst_uniforms(std::size_t n, std::uint64_t seed) {
    auto eng = substream(seed, 0);
    std::vector<double> u(n);
    for (double& x : u) x = uniform01(eng);
    return u;
}

BinaryTree bst_from_uniforms(std::span<const double> u) {
    std::vector<std::size_t> order(u.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (u[order[i]] == u[order[i - 1]]) fail(ErrorKind::domain, "uniform sequence has tied values");
    }
    std::vector<double> keys(order.begin(), order.end());
    return bst_from_keys(keys);
}

BinaryTree bst_devroye_tree(std::size_t n, std::uint64_t seed) { return bst_from_uniforms(bst_uniforms(n, seed)); }

namespace {

/// Indicator without arity checks; `scratch` avoids reallocating.
int fringe_indicator(const BinaryTree& pattern, std::span<const double> window, std::vector<double>& scratch) {
    const std::size_t k = window.size() - 2;
    const double left = window.front();
    const double right = window.back();
    for (std::size_t i = 1; i <= k; ++i) {
        if (!(window[i] > left) || !(window[i] > right)) {
            if (window[i] == left || window[i] == right) {
                fail(ErrorKind::domain, "window boundary ties an interior value");
            }
            return 0;
        }
    }
    scratch.assign(window.begin() + 1, window.end() - 1);
    std::sort(scratch.begin(), scratch.end());
    if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end()) {
        fail(ErrorKind::domain, "window interior has duplicate values");
    }
    return min_rooted_tree(window.subspan(1, k)) == pattern ? 1 : 0;
}

}  // namespace

int bst_fringe_indicator(const BinaryTree& pattern, std::span<const double> window) {
    require(!pattern.empty(), "fringe pattern must have at least one node");
    if (window.size() != pattern.size() + 2) {
        fail(ErrorKind::arity, "window must hold |T|+2 = " + std::to_string(pattern.size() + 2) + " values");
    }
    std::vector<double> scratch;
    return fringe_indicator(pattern, window, scratch);
}

std::size_t bst_window_count(std::span<const double> u, const BinaryTree& pattern) {
    require(!pattern.empty(), "fringe pattern must have at least one node");
    const std::size_t k = pattern.size();
    const std::size_t n = u.size();
    if (n < k) return 0;
    std::vector<double> padded(n + 2, 0.0);
    std::copy(u.begin(), u.end(), padded.begin() + 1);
    std::vector<double> scratch;
    std::size_t count = 0;
    for (std::size_t i = 0; i + k + 2 <= padded.size(); ++i) {
        count += static_cast<std::size_t>(
            fringe_indicator(pattern, std::span<const double>(padded).subspan(i, k + 2), scratch));
    }
    return count;
}

std::size_t bst_subtree_count(std::size_t n, const BinaryTree& pattern, std::uint64_t seed) {
    require(n >= 1, "n must be at least 1");
    return bst_window_count(bst_uniforms(n, seed), pattern);
}

double bst_pattern_probability(const BinaryTree& pattern) {
    const double k = static_cast<double>(pattern.size());
    return 2.0 / ((k + 1.0) * (k + 2.0)) * bst_shape_probability(pattern);
}

BlockFactor bst_fringe_factor(const BinaryTree& pattern) {
    require(!pattern.empty(), "fringe pattern must have at least one node");
    auto f = [pattern](std::span<const double> w) {
        thread_local std::vector<double> scratch;
        return static_cast<double>(fringe_indicator(pattern, w, scratch));
    };
    return BlockFactor::from_function(uniform_source(), pattern.size() + 2, f,
                                      {.name = "bst:" + pattern.to_string(),
                                       .locally_constant = true,
                                       .mean = bst_pattern_probability(pattern)});
}

BlockFactor bst_linear_factor(const BinaryStatistic& stat) {
    double mean = 0.0;
    std::string name = "bst-linear";
    for (const auto& t : stat.terms()) {
        mean += t.coefficient * bst_pattern_probability(t.tree);
        name += ":" + std::to_string(t.coefficient) + "*" + t.tree.to_string();
    }
    auto f = [stat](std::span<const double> w) {
        thread_local std::vector<double> scratch;
        double sum = 0.0;
        for (const auto& t : stat.terms()) {
            sum += t.coefficient * fringe_indicator(t.tree, w.first(t.tree.size() + 2), scratch);
        }
        return sum;
    };
    return BlockFactor::from_function(uniform_source(), stat.max_size() + 2, f,
                                      {.name = name, .locally_constant = true, .mean = mean});
}

namespace {

/// Preorder indices of the nodes of `tree` listed in in-order.
std::vector<std::size_t> inorder_preorder_ranks(const BinaryTree& tree) {
    constexpr std::size_t nil = static_cast<std::size_t>(-1);
    const auto& code = tree.code();
    std::vector<std::size_t> left(tree.size(), nil);
    std::vector<std::size_t> right(tree.size(), nil);
    std::size_t pos = 0;
    std::size_t next_node = 0;
    auto parse = [&](auto&& self) -> std::size_t {
        if (code[pos++] == 0) return nil;
        const std::size_t v = next_node++;
        left[v] = self(self);
        right[v] = self(self);
        return v;
    };
    parse(parse);
    std::vector<std::size_t> order;
    std::vector<std::size_t> path;
    std::size_t v = tree.empty() ? nil : 0;
    while (v != nil || !path.empty()) {
        while (v != nil) {
            path.push_back(v);
            v = left[v];
        }
        v = path.back();
        path.pop_back();
        order.push_back(v);
        v = right[v];
    }
    return order;
}

}  // namespace

BstWitness bst_witness_configuration(const BinaryStatistic& stat, std::size_t n) {
    const std::size_t ell = stat.max_size() + 2;
    if (n <= 3 * ell) {
        fail(ErrorKind::domain, "witness needs n > 3(max|T_j|+2) = " + std::to_string(3 * ell));
    }
    const BinaryTree& t1 = stat.first().tree;
    const std::size_t k = t1.size();

    BstWitness w;
    w.n = n;
    w.ell = ell;
    w.block_begin = ell;
    w.u_prime.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.u_prime[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);

    // block = 1-based positions ell..ell+k holding v_0 < ... < v_k; v_0 moves
    // to the end of the block and the interior gets T_1 in heap order
    w.u_double_prime = w.u_prime;
    const std::size_t b = ell - 1;
    const std::vector<double> v(w.u_prime.begin() + static_cast<std::ptrdiff_t>(b),
                                w.u_prime.begin() + static_cast<std::ptrdiff_t>(b + k + 1));
    const auto ranks = inorder_preorder_ranks(t1);
    for (std::size_t j = 0; j < k; ++j) w.u_double_prime[b + j] = v[1 + ranks[j]];
    w.u_double_prime[b + k] = v[0];

    for (const auto& term : stat.terms()) {
        const std::size_t c1 = bst_window_count(w.u_prime, term.tree);
        const std::size_t c2 = bst_window_count(w.u_double_prime, term.tree);
        w.counts_prime.push_back(c1);
        w.counts_double_prime.push_back(c2);
        w.f_prime += term.coefficient * static_cast<double>(c1);
        w.f_double_prime += term.coefficient * static_cast<double>(c2);
    }
    return w;
}

Rc2Result bst_witness_check(const BinaryStatistic& stat, const BstWitness& witness) {
    const BlockFactor f = bst_linear_factor(stat);
    const std::size_t ell = f.ell();
    const std::size_t n = witness.n;
    auto slice = [](const std::vector<double>& u, std::size_t from, std::size_t to) {
        return std::span<const double>(u).subspan(from, to - from);
    };
    const auto& a = witness.u_prime;
    const auto& b = witness.u_double_prime;
    require(std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(ell - 1), b.begin()) &&
                std::equal(a.end() - static_cast<std::ptrdiff_t>(ell - 1), a.end(),
                           b.end() - static_cast<std::ptrdiff_t>(ell - 1)),
            "witness sequences must share their boundaries");
    return rc2_witness_check(f, slice(a, 0, ell - 1), slice(a, n - ell + 1, n), slice(a, ell - 1, n - ell + 1),
                             slice(b, ell - 1, n - ell + 1));
}

std::vector<BstDensity> bst_density_mc(const std::vector<BinaryTree>& patterns, std::size_t n,
                                       const McOptions& options) {
    require(!patterns.empty(), "no fringe patterns given");
    require(n >= 1 && options.reps >= 2, "density estimate needs n >= 1 and at least two replicas");
    const std::size_t p = patterns.size();
    std::vector<double> densities(p * options.reps);
    parallel_for(options.reps, options.workers, [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(n);
        for (std::size_t r = begin; r < end; ++r) {
            auto eng = substream(options.seed, r);
            for (double& x : u) x = uniform01(eng);
            for (std::size_t j = 0; j < p; ++j) {
                densities[j * options.reps + r] =
                    static_cast<double>(bst_window_count(u, patterns[j])) / static_cast<double>(n);
            }
        }
    });
    std::vector<BstDensity> out;
    for (std::size_t j = 0; j < p; ++j) {
        out.push_back({patterns[j],
                       mean_estimate(std::span<const double>(densities).subspan(j * options.reps, options.reps)),
                       bst_pattern_probability(patterns[j])});
    }
    return out;
}

}  // namespace mdep
