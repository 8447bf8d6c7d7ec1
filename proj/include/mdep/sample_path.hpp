#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mdep/block_factor.hpp"

namespace mdep {

/// One realisation xi_1..xi_{n+ell-1}, X_1..X_n and S_1..S_n.
struct SamplePath {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t ell = 1;
    std::size_t dimension = 1;
    std::vector<double> draws;         ///< (n + ell - 1) * dimension values
    std::vector<double> values;        ///< X_1..X_n
    std::vector<double> partial_sums;  ///< S_1..S_n

    /// Source value xi_{i+1} (0-based index).
    std::span<const double> draw(std::size_t i) const {
        return std::span<const double>(draws).subspan(i * dimension, dimension);
    }
};

/// Pure function of its arguments: equal arguments give bitwise-equal paths.
/// `stream` selects the substream of `seed`; Monte Carlo replica r uses stream r.
SamplePath sample_path(const BlockFactor& factor, std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Scratch buffer of source draws reused across Monte Carlo replicas.
class DrawBuffer {
public:
    explicit DrawBuffer(const Source& source) : source_(&source), dim_(source.dimension()) {}

    /// Replaces the contents with `count` fresh i.i.d. draws.
    void draw(std::mt19937_64& eng, std::size_t count);
    /// Overwrites draw `i` (used to condition on a fixed window).
    void set(std::size_t i, std::span<const double> value);

    std::size_t size() const noexcept { return indices_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> value(std::size_t i) const {
        return std::span<const double>(values_).subspan(i * dim_, dim_);
    }

    /// X at window start `start` (0-based).
    double window_value(const BlockFactor& factor, std::size_t start) const;
    /// Sum of X over windows start..start+count-1. The factor must share this buffer's source.
    double window_sum(const BlockFactor& factor, std::size_t start, std::size_t count) const;
    /// X for windows start..start+count-1 appended to `out`.
    void window_values(const BlockFactor& factor, std::size_t start, std::size_t count,
                       std::vector<double>& out) const;

private:
    const Source* source_;
    std::size_t dim_;
    std::vector<double> values_;
    std::vector<std::size_t> indices_;
};

}  // namespace mdep
