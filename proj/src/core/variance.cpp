#include "mdep/variance.hpp"

#include "exact_util.hpp"

#include <cmath>

#include "mdep/error.hpp"
#include "mdep/parallel.hpp"
#include "mdep/rng.hpp"
#include "mdep/sample_path.hpp"

namespace mdep {

namespace {

using detail::word_probabilities;

template <class T>
struct RawMoments {
    T mean{};
    std::vector<T> second;  // E[X_0 X_k], k = 0..ell-1
};

template <class T>
RawMoments<T> raw_moments(const std::vector<T>& table, const std::vector<T>& p, std::size_t ell) {
    std::vector<std::vector<T>> words(ell + 1);
    for (std::size_t len = 0; len <= ell; ++len) words[len] = word_probabilities(p, len);

    RawMoments<T> out;
    for (std::size_t c = 0; c < table.size(); ++c) out.mean += words[ell][c] * table[c];

    out.second.resize(ell);
    for (std::size_t k = 0; k < ell; ++k) {
        const std::size_t shared = ell - k;
        const std::size_t outer = words[k].size();  // a^k
        const std::size_t middle = words[shared].size();
        T acc{};
        for (std::size_t mid = 0; mid < middle; ++mid) {
            T left{};
            T right{};
            for (std::size_t o = 0; o < outer; ++o) {
                left += words[k][o] * table[o * middle + mid];
                right += words[k][o] * table[mid * outer + o];
            }
            acc += words[shared][mid] * left * right;
        }
        out.second[k] = acc;
    }
    return out;
}

}  // namespace

MomentSummary exact_moments(const BlockFactor& factor, const ExactOptions& options) {
    const std::vector<double> table = factor.tabulate(options.budget);
    const std::size_t ell = factor.ell();
    MomentSummary out;
    out.ell = ell;

    if (detail::use_rational(factor, table, options.mode)) {
        std::vector<Rational> p;
        for (const Atom& a : factor.source().atoms()) p.push_back(*a.exact_probability);
        const RawMoments<Rational> raw = raw_moments(detail::rational_table(factor, table), p, ell);
        std::vector<Rational> exact;
        exact.push_back(raw.mean);
        Rational sigma2 = 0;
        for (std::size_t k = 0; k < ell; ++k) {
            const Rational cov = raw.second[k] - raw.mean * raw.mean;
            exact.push_back(cov);
            sigma2 += (k == 0 ? Rational(1) : Rational(2)) * cov;
        }
        exact.push_back(sigma2);
        out.rational = true;
        out.mean = to_double(raw.mean);
        out.variance = to_double(exact[1]);
        for (std::size_t k = 1; k < ell; ++k) out.lag_covariances.push_back(to_double(exact[k + 1]));
        out.sigma2_raw = to_double(sigma2);
        out.sigma2 = sigma2 == 0 ? 0.0 : out.sigma2_raw;
        out.exact = std::move(exact);
        return out;
    }

    std::vector<double> p;
    for (const Atom& a : factor.source().atoms()) p.push_back(a.probability);
    const RawMoments<double> raw = raw_moments(table, p, ell);
    out.mean = raw.mean;
    out.variance = raw.second[0] - raw.mean * raw.mean;
    double sigma2 = out.variance;
    for (std::size_t k = 1; k < ell; ++k) {
        const double cov = raw.second[k] - raw.mean * raw.mean;
        out.lag_covariances.push_back(cov);
        sigma2 += 2.0 * cov;
    }
    out.sigma2_raw = sigma2;
    out.sigma2 = std::abs(sigma2) <= options.tolerance ? 0.0 : sigma2;
    if (std::abs(out.variance) <= options.tolerance) out.variance = 0.0;
    return out;
}

double var_sn_from_moments(const MomentSummary& moments, std::size_t n) {
    require(n >= 1, "n must be at least 1");
    const std::size_t m = moments.ell - 1;
    if (moments.exact) {
        const auto& e = *moments.exact;  // mean, Var, Cov_1..Cov_m, sigma2
        Rational v = 0;
        if (n >= m) {
            v = Rational(static_cast<long long>(n)) * e.back();
            for (std::size_t k = 1; k <= m; ++k) v -= Rational(static_cast<long long>(2 * k)) * e[k + 1];
        } else {
            v = Rational(static_cast<long long>(n)) * e[1];
            for (std::size_t k = 1; k < n; ++k) v += Rational(static_cast<long long>(2 * (n - k))) * e[k + 1];
        }
        return to_double(v);
    }
    const double nd = static_cast<double>(n);
    if (n >= m) {
        double v = nd * moments.sigma2_raw;
        for (std::size_t k = 1; k <= m; ++k) v -= 2.0 * static_cast<double>(k) * moments.lag_covariances[k - 1];
        return v;
    }
    double v = nd * moments.variance;
    for (std::size_t k = 1; k < n; ++k) v += 2.0 * static_cast<double>(n - k) * moments.lag_covariances[k - 1];
    return v;
}

double var_sn_exact(const BlockFactor& factor, std::size_t n, const ExactOptions& options) {
    return var_sn_from_moments(exact_moments(factor, options), n);
}

std::vector<double> replica_sums(const BlockFactor& factor, std::size_t n, const McOptions& options) {
    require(n >= 1, "n must be at least 1");
    std::vector<double> sums(options.reps);
    parallel_for(options.reps, options.workers, [&](std::size_t begin, std::size_t end) {
        DrawBuffer buffer(factor.source());
        for (std::size_t r = begin; r < end; ++r) {
            auto eng = substream(options.seed, r);
            buffer.draw(eng, n + factor.ell() - 1);
            sums[r] = buffer.window_sum(factor, 0, n);
        }
    });
    return sums;
}

McVariance sigma_squared_mc(const BlockFactor& factor, std::size_t n, const McOptions& options) {
    require(n >= factor.ell(), "sigma_squared_mc needs n >= ell");
    require(options.reps >= 2, "sigma_squared_mc needs at least two replicas");
    const std::vector<double> sums = replica_sums(factor, n, options);
    McVariance out;
    out.n = n;
    out.reps = options.reps;
    out.var_sn = jackknife_variance(sums);
    out.mean_sn = mean_estimate(sums);
    const double nd = static_cast<double>(n);
    out.sigma2 = {out.var_sn.value / nd, out.var_sn.std_error / nd};
    return out;
}

}  // namespace mdep
