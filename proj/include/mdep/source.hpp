#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mdep/rational.hpp"

namespace mdep {

enum class SourceKind { finite_discrete, continuous_uniform, composite, countable };

/// Coordinates of a composite draw.
enum class Component { uniform, normal };

struct Atom {
    double value = 0.0;
    double probability = 0.0;
    /// Present when the probability was supplied as an exact rational.
    std::optional<Rational> exact_probability;
};

/// Law of the i.i.d. driving sequence.
///
/// A draw is `dimension()` doubles. Finite-discrete and countable sources
/// draw one scalar; composite sources draw one value per component.
/// Immutable after construction, safe to share between threads.
class Source {
public:
    /// Atoms keep the given order; that order defines the alphabet index
    /// used by dense factor tables.
    static Source finite(std::vector<Atom> atoms);
    static Source finite(std::span<const double> values, std::span<const double> probabilities);
    static Source uniform();
    static Source composite(std::vector<Component> components);
    /// Integer-valued law with unbounded support, sampled by `sampler`.
    static Source countable(std::string name, std::function<double(std::int64_t)> pmf,
                            std::function<std::int64_t(std::mt19937_64&)> sampler);

    SourceKind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == SourceKind::finite_discrete; }
    bool is_continuous() const noexcept {
        return kind_ == SourceKind::continuous_uniform || kind_ == SourceKind::composite;
    }
    std::size_t dimension() const noexcept { return kind_ == SourceKind::composite ? components_.size() : 1; }

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t alphabet_size() const noexcept { return atoms_.size(); }
    const std::vector<Component>& components() const noexcept { return components_; }
    const std::string& name() const noexcept { return name_; }

    /// Alphabet index of `value`, if it is an atom.
    std::optional<std::size_t> index_of(double value) const;

    /// True if `value` is a possible draw (an atom, a point of (0,1), an
    /// integer of positive mass, ...). Composite sources check per component.
    bool contains(std::span<const double> value) const;

    /// All probabilities exact and summing exactly to one.
    bool has_exact_probabilities() const noexcept { return exact_; }

    /// Writes one draw into `out` (size `dimension()`); for finite sources
    /// returns the alphabet index, otherwise 0.
    std::size_t draw(std::mt19937_64& eng, std::span<double> out) const;

    std::string describe() const;

private:
    Source() = default;

    SourceKind kind_ = SourceKind::continuous_uniform;
    std::vector<Atom> atoms_;
    std::vector<double> cumulative_;
    std::vector<std::pair<double, std::size_t>> lookup_;
    std::vector<Component> components_;
    std::string name_;
    std::function<double(std::int64_t)> pmf_;
    std::function<std::int64_t(std::mt19937_64&)> sampler_;
    bool exact_ = false;
};

using SourcePtr = std::shared_ptr<const Source>;

}  // namespace mdep
