#pragma once

#include <cmath>
#include <vector>

#include "mdep/block_factor.hpp"
#include "mdep/error.hpp"
#include "mdep/variance.hpp"

namespace mdep::detail {

inline bool all_integral(const std::vector<double>& table) {
    for (double v : table) {
        if (v != std::floor(v) || std::abs(v) > 9.0e15) return false;
    }
    return true;
}

/// Rational arithmetic is used only when nothing was rounded on the way in.
inline bool use_rational(const BlockFactor& factor, const std::vector<double>& table, ArithmeticMode mode) {
    const bool available = factor.source().has_exact_probabilities() &&
                           (factor.exact_table().has_value() || all_integral(table));
    switch (mode) {
        case ArithmeticMode::floating: return false;
        case ArithmeticMode::automatic: return available;
        case ArithmeticMode::rational:
            if (!available) {
                fail(ErrorKind::unsupported,
                     "rational mode needs exact atom probabilities and an exact (integer or p/q) table");
            }
            return true;
    }
    return false;
}

inline std::vector<Rational> rational_table(const BlockFactor& factor, const std::vector<double>& table) {
    if (factor.exact_table()) return *factor.exact_table();
    std::vector<Rational> out;
    out.reserve(table.size());
    for (double v : table) out.push_back(rational_from_double(v));
    return out;
}

inline std::vector<Rational> rational_probabilities(const Source& source) {
    std::vector<Rational> p;
    for (const Atom& a : source.atoms()) p.push_back(*a.exact_probability);
    return p;
}

inline std::vector<double> probabilities(const Source& source) {
    std::vector<double> p;
    for (const Atom& a : source.atoms()) p.push_back(a.probability);
    return p;
}

/// Probability of every word of length `len`, mixed-radix order.
template <class T>
std::vector<T> word_probabilities(const std::vector<T>& p, std::size_t len) {
    std::vector<T> words{T(1)};
    for (std::size_t step = 0; step < len; ++step) {
        std::vector<T> next;
        next.reserve(words.size() * p.size());
        for (const T& w : words) {
            for (const T& q : p) next.push_back(w * q);
        }
        words = std::move(next);
    }
    return words;
}

}  // namespace mdep::detail
