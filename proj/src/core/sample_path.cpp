#include "mdep/sample_path.hpp"

#include "mdep/error.hpp"
#include "mdep/rng.hpp"

namespace mdep {

void DrawBuffer::draw(std::mt19937_64& eng, std::size_t count) {
    values_.resize(count * dim_);
    indices_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        indices_[i] = source_->draw(eng, std::span<double>(values_).subspan(i * dim_, dim_));
    }
}

void DrawBuffer::set(std::size_t i, std::span<const double> value) {
    require(value.size() == dim_, "draw has the wrong dimension");
    for (std::size_t j = 0; j < dim_; ++j) values_[i * dim_ + j] = value[j];
    if (source_->is_finite()) {
        const auto idx = source_->index_of(value[0]);
        if (!idx) fail(ErrorKind::domain, "value " + std::to_string(value[0]) + " is not an atom");
        indices_[i] = *idx;
    }
}

double DrawBuffer::window_value(const BlockFactor& factor, std::size_t start) const {
    const std::size_t ell = factor.ell();
    if (factor.has_table()) {
        const std::size_t a = source_->alphabet_size();
        std::size_t code = 0;
        for (std::size_t j = 0; j < ell; ++j) code = code * a + indices_[start + j];
        return factor.at_code(code);
    }
    return factor.evaluate_unchecked(std::span<const double>(values_).subspan(start * dim_, ell * dim_));
}

void DrawBuffer::window_values(const BlockFactor& factor, std::size_t start, std::size_t count,
                               std::vector<double>& out) const {
    const std::size_t ell = factor.ell();
    require(start + count + ell - 1 <= size(), "not enough draws for the requested windows");
    if (count == 0) return;
    if (factor.has_table()) {
        const std::size_t a = source_->alphabet_size();
        const std::size_t high = *checked_power(a, ell - 1);
        std::size_t code = 0;
        for (std::size_t j = 0; j + 1 < ell; ++j) code = code * a + indices_[start + j];
        for (std::size_t i = 0; i < count; ++i) {
            code = (code % high) * a + indices_[start + i + ell - 1];
            out.push_back(factor.at_code(code));
        }
        return;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(factor.evaluate_unchecked(
            std::span<const double>(values_).subspan((start + i) * dim_, ell * dim_)));
    }
}

double DrawBuffer::window_sum(const BlockFactor& factor, std::size_t start, std::size_t count) const {
    const std::size_t ell = factor.ell();
    require(start + count + ell - 1 <= size(), "not enough draws for the requested windows");
    double sum = 0.0;
    if (count == 0) return sum;
    if (factor.has_table()) {
        const std::size_t a = source_->alphabet_size();
        const std::size_t high = *checked_power(a, ell - 1);
        std::size_t code = 0;
        for (std::size_t j = 0; j + 1 < ell; ++j) code = code * a + indices_[start + j];
        for (std::size_t i = 0; i < count; ++i) {
            code = (code % high) * a + indices_[start + i + ell - 1];
            sum += factor.at_code(code);
        }
        return sum;
    }
    for (std::size_t i = 0; i < count; ++i) {
        sum += factor.evaluate_unchecked(std::span<const double>(values_).subspan((start + i) * dim_, ell * dim_));
    }
    return sum;
}

SamplePath sample_path(const BlockFactor& factor, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    require(n >= 1, "path length n must be at least 1");
    auto eng = substream(seed, stream);
    DrawBuffer buffer(factor.source());
    buffer.draw(eng, n + factor.ell() - 1);

    SamplePath path;
    path.seed = seed;
    path.n = n;
    path.ell = factor.ell();
    path.dimension = factor.source().dimension();
    path.draws.assign(buffer.values().begin(), buffer.values().end());
    path.values.reserve(n);
    buffer.window_values(factor, 0, n, path.values);
    path.partial_sums.resize(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += path.values[i];
        path.partial_sums[i] = s;
    }
    return path;
}

}  // namespace mdep
