#pragma once

// Independent oracles and random factor generators for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mdep/block_factor.hpp"
#include "mdep/source.hpp"

namespace testing {

inline mdep::SourcePtr finite_source(const std::vector<double>& values, const std::vector<double>& probs) {
    return std::make_shared<const mdep::Source>(mdep::Source::finite(values, probs));
}

/// Values 0..a-1 with exact probabilities q_i / total.
inline mdep::SourcePtr exact_source(const std::vector<long long>& weights) {
    const long long total = std::accumulate(weights.begin(), weights.end(), 0LL);
    std::vector<mdep::Atom> atoms;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        mdep::Rational p(weights[i], total);
        atoms.push_back({static_cast<double>(i), mdep::to_double(p), p});
    }
    return std::make_shared<const mdep::Source>(mdep::Source::finite(atoms));
}

/// Random probability vector bounded away from 0.
inline std::vector<double> random_probs(std::mt19937_64& eng, std::size_t a) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> p(a);
    double s = 0.0;
    for (double& x : p) s += (x = u(eng));
    for (double& x : p) x /= s;
    // absorb rounding so the probabilities sum to 1 within 1e-15
    double rest = 1.0;
    for (std::size_t i = 0; i + 1 < a; ++i) rest -= p[i];
    p.back() = rest;
    return p;
}

inline std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

/// Digits of `code` in base a, first coordinate most significant.
inline std::vector<std::size_t> digits(std::size_t code, std::size_t a, std::size_t len) {
    std::vector<std::size_t> d(len);
    for (std::size_t i = len; i-- > 0;) {
        d[i] = code % a;
        code /= a;
    }
    return d;
}

/// f = g(x_2..x_ell) - g(x_1..x_{ell-1}) + c as a table.
inline std::vector<double> coboundary_table(const std::vector<double>& g, double c, std::size_t a, std::size_t ell) {
    std::vector<double> t(power(a, ell));
    const std::size_t stride = power(a, ell - 1);
    for (std::size_t code = 0; code < t.size(); ++code) {
        const std::size_t head = code % stride;  // x_2..x_ell
        const std::size_t tail = code / a;       // x_1..x_{ell-1}
        t[code] = (ell == 1 ? 0.0 : g[head] - g[tail]) + c;
    }
    return t;
}

/// Probability and value of every word of length `len`, by plain recursion.
inline void for_each_word(std::size_t a, std::size_t len, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> w(len, 0);
    while (true) {
        fn(w);
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++w[i] < a) break;
            w[i] = 0;
            if (i == 0) return;
        }
        if (len == 0) return;
    }
}

inline double window_f(const std::vector<double>& table, std::size_t a, const std::vector<std::size_t>& w,
                       std::size_t start, std::size_t ell) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < ell; ++i) code = code * a + w[start + i];
    return table[code];
}

/// Var(S_n) by enumerating every source sequence of length n + ell - 1.
inline double var_sn_by_sequences(const std::vector<double>& table, const std::vector<double>& p, std::size_t ell,
                                  std::size_t n) {
    const std::size_t a = p.size();
    double m1 = 0.0;
    double m2 = 0.0;
    for_each_word(a, n + ell - 1, [&](const std::vector<std::size_t>& w) {
        double prob = 1.0;
        for (std::size_t x : w) prob *= p[x];
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += window_f(table, a, w, i, ell);
        m1 += prob * s;
        m2 += prob * s * s;
    });
    return m2 - m1 * m1;
}

/// Cov(X_0, X_k) by enumerating the k + ell joint coordinates.
inline double lag_covariance_naive(const std::vector<double>& table, const std::vector<double>& p, std::size_t ell,
                                   std::size_t k) {
    const std::size_t a = p.size();
    double e0 = 0.0;
    double ek = 0.0;
    double e0k = 0.0;
    for_each_word(a, k + ell, [&](const std::vector<std::size_t>& w) {
        double prob = 1.0;
        for (std::size_t x : w) prob *= p[x];
        const double x0 = window_f(table, a, w, 0, ell);
        const double xk = window_f(table, a, w, k, ell);
        e0 += prob * x0;
        ek += prob * xk;
        e0k += prob * x0 * xk;
    });
    return e0k - e0 * ek;
}

/// sum_i sum_j Cov(X_i, X_j) for i, j = 1..n.
inline double var_sn_double_sum(const std::vector<double>& table, const std::vector<double>& p, std::size_t ell,
                                std::size_t n) {
    std::vector<double> cov(n);
    for (std::size_t k = 0; k < n; ++k) cov[k] = k < ell ? lag_covariance_naive(table, p, ell, k) : 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) v += cov[i > j ? i - j : j - i];
    }
    return v;
}

/// Pointer-based BST for fringe oracles.
struct Node {
    double key;
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;
};

inline void insert(std::unique_ptr<Node>& root, double key) {
    if (!root) {
        root = std::make_unique<Node>(Node{key, nullptr, nullptr});
        return;
    }
    insert(key < root->key ? root->left : root->right, key);
}

/// Preorder 1/0 code of every subtree, appended to `codes`; returns the code of `node`.
inline std::string collect_codes(const Node* node, std::vector<std::string>& codes) {
    if (!node) return "0";
    std::string code = "1" + collect_codes(node->left.get(), codes) + collect_codes(node->right.get(), codes);
    codes.push_back(code);
    return code;
}

/// n_T for the tree built by inserting keys 1..n in increasing order of u.
inline std::size_t fringe_count_oracle(const std::vector<double>& u, const std::string& pattern) {
    std::vector<std::size_t> order(u.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });
    std::unique_ptr<Node> root;
    for (std::size_t i : order) insert(root, static_cast<double>(i));
    std::vector<std::string> codes;
    collect_codes(root.get(), codes);
    return static_cast<std::size_t>(std::count(codes.begin(), codes.end(), pattern));
}

/// All binary trees with exactly k nodes as 1/0 codes.
inline std::vector<std::string> binary_trees_of_size(std::size_t k) {
    if (k == 0) return {"0"};
    std::vector<std::string> out;
    for (std::size_t left = 0; left < k; ++left) {
        for (const auto& l : binary_trees_of_size(left)) {
            for (const auto& r : binary_trees_of_size(k - 1 - left)) out.push_back("1" + l + r);
        }
    }
    return out;
}

/// Conditional law of the depth-first degree sequence of a GW tree with n
/// nodes: valid sequences weighted by prod p_{d_i}, normalized.
inline std::map<std::vector<std::uint32_t>, double> gw_conditional_law(const std::vector<double>& p, std::size_t n) {
    std::map<std::vector<std::uint32_t>, double> law;
    double total = 0.0;
    for_each_word(p.size(), n, [&](const std::vector<std::size_t>& w) {
        long long path = 0;
        bool valid = true;
        double prob = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            path += static_cast<long long>(w[i]) - 1;
            prob *= p[w[i]];
            if (i + 1 < n && path < 0) valid = false;
        }
        if (!valid || path != -1 || prob == 0.0) return;
        law[std::vector<std::uint32_t>(w.begin(), w.end())] += prob;
        total += prob;
    });
    for (auto& [k, v] : law) v /= total;
    return law;
}

}  // namespace testing
