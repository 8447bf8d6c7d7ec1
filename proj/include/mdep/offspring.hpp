#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mdep/rational.hpp"
#include "mdep/source.hpp"

namespace mdep {

inline constexpr std::size_t kDefaultTruncation = 30;

/// Critical offspring law: E xi = 1, p_0 > 0, finite variance.
///
/// Either an explicit finite vector p_0, p_1, ... or a named preset with
/// unbounded support ("poisson1", "geom-half"). Presets are sampled from the
/// untruncated law; exact computations use the law truncated at
/// `truncation()` and renormalized.
class OffspringDistribution {
public:
    /// Mean must be 1 within 1e-9 and p_0 > 0; trailing zeros are allowed.
    static OffspringDistribution from_probabilities(std::vector<double> p);
    /// Same, with probabilities known exactly (sum must be exactly 1).
    static OffspringDistribution from_rationals(std::vector<Rational> p);
    /// truncation 0 keeps the law untruncated; exact operations then fail.
    static OffspringDistribution preset(std::string_view name, std::size_t truncation = kDefaultTruncation);
    /// {"p": [...]} (numbers or "p/q" strings) or {"preset": name, "truncate": k}.
    /// A bare preset name is accepted too. `truncate_override` replaces the
    /// truncation of a preset.
    static OffspringDistribution parse(std::string_view text,
                                       std::optional<std::size_t> truncate_override = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    bool is_preset() const noexcept { return preset_; }
    /// Exact computations use a truncated, renormalized law.
    bool is_approximate() const noexcept { return preset_; }
    std::size_t truncation() const noexcept { return truncation_; }
    bool has_finite_support() const noexcept { return !preset_ || truncation_ > 0; }

    /// P(xi = k) under the true law.
    double pmf(std::int64_t k) const;
    /// Mean and variance of the true law.
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }
    /// Mass of the true law above the truncation point (0 for explicit laws).
    double truncated_mass() const;

    /// Probabilities used for exact computations, index = degree; zeros kept.
    /// Unsupported error for an untruncated preset.
    const std::vector<double>& probabilities() const;
    /// Exact probabilities, when the law was given as rationals.
    const std::optional<std::vector<Rational>>& exact_probabilities() const noexcept { return exact_p_; }
    /// Support points of the exact law, ascending.
    std::vector<std::int64_t> support() const;
    std::vector<std::int64_t> positive_support() const;

    /// Draw from the true law by inversion.
    std::int64_t sample(std::mt19937_64& eng) const;

    /// Finite source over the exact-computation support.
    SourcePtr exact_source() const;
    /// Source drawing from the true law (finite for explicit laws).
    SourcePtr sampling_source() const;

private:
    OffspringDistribution() = default;
    void finish();

    std::string name_;
    bool preset_ = false;
    std::size_t truncation_ = 0;
    std::vector<double> p_;
    std::optional<std::vector<Rational>> exact_p_;
    std::vector<double> cdf_;
    double mean_ = 0.0;
    double variance_ = 0.0;
    double tail_ = 0.0;
};

}  // namespace mdep
