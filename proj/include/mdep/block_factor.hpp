#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdep/rational.hpp"
#include "mdep/source.hpp"

namespace mdep {

/// f evaluated on a flat window of ell * dimension doubles.
using WindowFunction = std::function<double(std::span<const double>)>;

struct FactorTraits {
    std::string name = "custom";
    /// f depends only on the order pattern of the window, so it is constant
    /// on a neighbourhood of any window with distinct entries.
    bool locally_constant = false;
    /// E X_0, when known in closed form.
    std::optional<double> mean;
};

/// X_k = f(xi_k, ..., xi_{k+ell-1}) over an i.i.d. source.
///
/// Two representations: a dense table over a finite alphabet, indexed by the
/// mixed-radix code of the window (first coordinate most significant), or an
/// arbitrary window function. Immutable and shareable across threads.
class BlockFactor {
public:
    static BlockFactor from_table(SourcePtr source, std::size_t ell, std::vector<double> table,
                                  std::optional<std::vector<Rational>> exact_table = std::nullopt,
                                  std::string name = "table");
    static BlockFactor from_function(SourcePtr source, std::size_t ell, WindowFunction f,
                                     FactorTraits traits = {});
    /// Dense table of `f` over a finite source.
    static BlockFactor tabulated(SourcePtr source, std::size_t ell, const WindowFunction& f,
                                 std::string name = "table");

    std::size_t ell() const noexcept { return ell_; }
    std::size_t dependence() const noexcept { return ell_ - 1; }
    const Source& source() const noexcept { return *source_; }
    const SourcePtr& source_ptr() const noexcept { return source_; }
    const FactorTraits& traits() const noexcept { return traits_; }
    /// Doubles per window.
    std::size_t window_width() const noexcept { return ell_ * source_->dimension(); }

    /// Checked evaluation: arity error on wrong length, domain error on a
    /// coordinate outside the source's support.
    double evaluate(std::span<const double> window) const;
    /// No validation; the window must come from the source.
    double evaluate_unchecked(std::span<const double> window) const;

    bool has_table() const noexcept { return !table_.empty(); }
    const std::vector<double>& table() const noexcept { return table_; }
    const std::optional<std::vector<Rational>>& exact_table() const noexcept { return exact_table_; }
    double at_code(std::size_t code) const { return table_[code]; }

    /// Values of f on every window of a finite source in mixed-radix order.
    /// Resource error if alphabet^ell exceeds `budget`.
    std::vector<double> tabulate(std::size_t budget) const;

private:
    BlockFactor() = default;

    SourcePtr source_;
    std::size_t ell_ = 1;
    std::vector<double> table_;
    std::optional<std::vector<Rational>> exact_table_;
    WindowFunction function_;
    FactorTraits traits_;
};

/// alphabet^length, or nullopt when it overflows / exceeds `limit`.
std::optional<std::size_t> checked_power(std::size_t base, std::size_t exponent,
                                         std::size_t limit = static_cast<std::size_t>(-1));

/// Mixed-radix digits of `code` (first coordinate most significant).
std::vector<std::size_t> decode_window(std::size_t code, std::size_t base, std::size_t length);

}  // namespace mdep
