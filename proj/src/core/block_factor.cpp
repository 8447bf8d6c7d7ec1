#include "mdep/block_factor.hpp"

#include <cmath>

#include "mdep/error.hpp"

namespace mdep {

std::optional<std::size_t> checked_power(std::size_t base, std::size_t exponent, std::size_t limit) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > limit / base) return std::nullopt;
        result *= base;
    }
    if (result > limit) return std::nullopt;
    return result;
}

std::vector<std::size_t> decode_window(std::size_t code, std::size_t base, std::size_t length) {
    std::vector<std::size_t> digits(length);
    for (std::size_t i = length; i-- > 0;) {
        digits[i] = code % base;
        code /= base;
    }
    return digits;
}

BlockFactor BlockFactor::from_table(SourcePtr source, std::size_t ell, std::vector<double> table,
                                    std::optional<std::vector<Rational>> exact_table, std::string name) {
    require(source != nullptr, "factor needs a source");
    require(source->is_finite(), "table factors need a finite-discrete source");
    require(ell >= 1, "window length must be at least 1");
    const auto size = checked_power(source->alphabet_size(), ell);
    require(size.has_value() && *size == table.size(),
            "table must have alphabet^ell = " +
                (size ? std::to_string(*size) : std::string("(overflow)")) + " entries, got " +
                std::to_string(table.size()));
    for (std::size_t i = 0; i < table.size(); ++i) {
        require(std::isfinite(table[i]), "table entry " + std::to_string(i) + " is not finite");
    }
    if (exact_table) require(exact_table->size() == table.size(), "exact table size mismatch");

    BlockFactor f;
    f.source_ = std::move(source);
    f.ell_ = ell;
    f.table_ = std::move(table);
    f.exact_table_ = std::move(exact_table);
    f.traits_.name = std::move(name);
    return f;
}

BlockFactor BlockFactor::from_function(SourcePtr source, std::size_t ell, WindowFunction fn,
                                       FactorTraits traits) {
    require(source != nullptr, "factor needs a source");
    require(ell >= 1, "window length must be at least 1");
    require(static_cast<bool>(fn), "factor function is empty");
    BlockFactor f;
    f.source_ = std::move(source);
    f.ell_ = ell;
    f.function_ = std::move(fn);
    f.traits_ = std::move(traits);
    return f;
}

BlockFactor BlockFactor::tabulated(SourcePtr source, std::size_t ell, const WindowFunction& fn,
                                   std::string name) {
    require(source != nullptr && source->is_finite(), "tabulation needs a finite-discrete source");
    const std::size_t a = source->alphabet_size();
    const auto size = checked_power(a, ell);
    require(size.has_value(), "table too large");
    std::vector<double> table(*size);
    std::vector<double> window(ell);
    for (std::size_t code = 0; code < *size; ++code) {
        std::size_t c = code;
        for (std::size_t i = ell; i-- > 0;) {
            window[i] = source->atoms()[c % a].value;
            c /= a;
        }
        table[code] = fn(window);
    }
    return from_table(std::move(source), ell, std::move(table), std::nullopt, std::move(name));
}

double BlockFactor::evaluate(std::span<const double> window) const {
    if (window.size() != window_width()) {
        fail(ErrorKind::arity, "window has " + std::to_string(window.size()) + " values, expected " +
                                   std::to_string(window_width()));
    }
    const std::size_t d = source_->dimension();
    for (std::size_t i = 0; i < ell_; ++i) {
        if (!source_->contains(window.subspan(i * d, d))) {
            fail(ErrorKind::domain, "window coordinate " + std::to_string(i) + " (" +
                                        std::to_string(window[i * d]) + ") is not in the source support");
        }
    }
    return evaluate_unchecked(window);
}

double BlockFactor::evaluate_unchecked(std::span<const double> window) const {
    if (has_table()) {
        const std::size_t a = source_->alphabet_size();
        std::size_t code = 0;
        for (double v : window) {
            const auto idx = source_->index_of(v);
            if (!idx) fail(ErrorKind::domain, "unknown atom " + std::to_string(v));
            code = code * a + *idx;
        }
        return table_[code];
    }
    return function_(window);
}

std::vector<double> BlockFactor::tabulate(std::size_t budget) const {
    if (!source_->is_finite()) {
        fail(ErrorKind::unsupported, "exact enumeration needs a finite-discrete source (got " +
                                         source_->describe() + "); use Monte Carlo");
    }
    const auto size = checked_power(source_->alphabet_size(), ell_, budget);
    if (!size) {
        fail(ErrorKind::resource, "enumeration budget exceeded: alphabet^ell with alphabet=" +
                                      std::to_string(source_->alphabet_size()) + ", ell=" +
                                      std::to_string(ell_) + " exceeds " + std::to_string(budget) +
                                      " windows; use Monte Carlo instead");
    }
    if (has_table()) return table_;
    return tabulated(source_, ell_, function_).table_;
}

}  // namespace mdep
