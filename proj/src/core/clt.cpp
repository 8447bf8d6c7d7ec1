#include "mdep/clt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mdep/catalog.hpp"
#include "mdep/error.hpp"
#include "mdep/parallel.hpp"
#include "mdep/rng.hpp"
#include "mdep/sample_path.hpp"

namespace mdep {

namespace {

constexpr std::size_t kRnChunk = 4096;

/// E X_0 when it is available without sampling.
std::optional<double> known_mean(const BlockFactor& factor) {
    if (factor.traits().mean) return factor.traits().mean;
    if (factor.source().is_finite()) return exact_moments(factor, {.mode = ArithmeticMode::floating}).mean;
    return std::nullopt;
}

}  // namespace

SimulationReport simulate_clt(const BlockFactor& factor, const CltOptions& options) {
    require(!options.n_list.empty(), "simulate_clt needs at least one n");
    require(options.reps >= 100, "simulate_clt needs reps >= 100");
    require(options.bins >= 1, "histogram needs at least one bin");
    SimulationReport report;
    report.factor = factor.traits().name;
    report.ell = factor.ell();
    report.reps = options.reps;
    report.seed = options.seed;
    report.alpha = options.alpha;
    const double reps = static_cast<double>(options.reps);
    for (std::size_t j = 0; j < options.n_list.size(); ++j) {
        const std::size_t n = options.n_list[j];
        require(n >= factor.ell(), "every n must be at least ell = " + std::to_string(factor.ell()));
        CltRow row;
        row.n = n;
        row.seed = derive_seed(options.seed, j);
        const std::vector<double> sums = replica_sums(factor, n, {options.reps, row.seed, options.workers});
        row.mean_sn = mean_estimate(sums);
        row.var_sn = jackknife_variance(sums);
        row.var_over_n = {row.var_sn.value / static_cast<double>(n), row.var_sn.std_error / static_cast<double>(n)};

        const double m = row.mean_sn.value;
        CompensatedSum ss;
        for (double x : sums) ss.add((x - m) * (x - m));
        const double sd = std::sqrt(ss.value() / reps);
        row.histogram.counts.assign(options.bins, 0);
        if (sd > 0.0) {
            std::vector<double> z4(sums.size());
            CompensatedSum s2;
            const double width = (row.histogram.hi - row.histogram.lo) / static_cast<double>(options.bins);
            for (std::size_t r = 0; r < sums.size(); ++r) {
                const double z = (sums[r] - m) / sd;
                s2.add(z * z);
                z4[r] = z * z * z * z;
                if (z < row.histogram.lo) {
                    ++row.histogram.underflow;
                } else if (z >= row.histogram.hi) {
                    ++row.histogram.overflow;
                } else {
                    const auto bin = std::min(options.bins - 1, static_cast<std::size_t>((z - row.histogram.lo) / width));
                    ++row.histogram.counts[bin];
                }
            }
            row.m2 = s2.value() / reps;
            row.m4 = mean_estimate(z4);
            row.m4_pass = std::abs(row.m4.value - 3.0) <= 5.0 * row.m4.std_error;
            row.ks_distance = ks_normal_distance(sums, m, sd);
        } else {
            // S_n is constant: no normal limit to compare with
            row.m2 = 0.0;
            row.ks_distance = 1.0;
        }
        row.ks_threshold = kolmogorov_critical(options.alpha) / std::sqrt(reps);
        row.ks_pass = row.ks_distance < row.ks_threshold;
        row.pass = row.m4_pass && row.ks_pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

DegenerateCheck degenerate_distribution_check(const BlockFactor& factor, std::size_t n1, std::size_t n2,
                                              const McOptions& options, std::optional<double> reference_variance,
                                              std::optional<double> mean, double alpha) {
    const std::size_t lowest = std::max<std::size_t>(1, factor.dependence());
    require(n1 >= lowest && n2 >= lowest, "n1 and n2 must be at least max(1, m)");
    require(options.reps >= 2, "degenerate check needs at least two replicas");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    DegenerateCheck out;
    out.n1 = n1;
    out.n2 = n2;
    out.reps = options.reps;
    out.alpha = alpha;

    std::vector<double> a = replica_sums(factor, n1, {options.reps, derive_seed(options.seed, 1), options.workers});
    std::vector<double> b = replica_sums(factor, n2, {options.reps, derive_seed(options.seed, 2), options.workers});
    double mu = 0.0;
    if (mean) {
        mu = *mean;
    } else if (auto k = known_mean(factor)) {
        mu = *k;
    } else {
        CompensatedSum s;
        for (double x : a) s.add(x);
        for (double x : b) s.add(x);
        mu = s.value() / (static_cast<double>(options.reps) * static_cast<double>(n1 + n2));
    }
    for (double& x : a) x -= static_cast<double>(n1) * mu;
    for (double& x : b) x -= static_cast<double>(n2) * mu;
    out.var1 = jackknife_variance(a);
    out.var2 = jackknife_variance(b);

    const double r = static_cast<double>(options.reps);
    out.distance = ks_two_sample(a, b);
    out.threshold = kolmogorov_critical(alpha) * std::sqrt(2.0 / r);
    out.pass = out.distance < out.threshold;

    if (reference_variance) {
        require(*reference_variance > 0.0, "reference variance must be positive");
        out.reference_variance = reference_variance;
        const double sd = std::sqrt(*reference_variance);
        out.reference_distance1 = ks_normal_distance(a, 0.0, sd);
        out.reference_distance2 = ks_normal_distance(b, 0.0, sd);
        out.reference_threshold = kolmogorov_critical(kFiveSigmaAlpha) / std::sqrt(r);
        out.reference_pass =
            out.reference_distance1 < out.reference_threshold && out.reference_distance2 < out.reference_threshold;
    }
    return out;
}

RnMoments rn_example_moments(std::size_t reps, std::uint64_t seed, unsigned workers) {
    require(reps >= 10000, "rn_example_moments needs reps >= 10^4");
    const BlockFactor factor = rn_example_factor();
    std::vector<double> x2(reps);
    std::vector<double> x4(reps);
    const std::size_t chunks = (reps + kRnChunk - 1) / kRnChunk;
    parallel_for(chunks, workers, [&](std::size_t begin, std::size_t end) {
        DrawBuffer buffer(factor.source());
        for (std::size_t c = begin; c < end; ++c) {
            auto eng = substream(seed, c);
            const std::size_t last = std::min(reps, (c + 1) * kRnChunk);
            for (std::size_t i = c * kRnChunk; i < last; ++i) {
                buffer.draw(eng, factor.ell());
                const double x = buffer.window_value(factor, 0);
                x2[i] = x * x;
                x4[i] = x2[i] * x2[i];
            }
        }
    });
    RnMoments out;
    out.reps = reps;
    out.seed = seed;
    out.m2 = mean_estimate(x2);
    out.m4 = mean_estimate(x4);
    const double r = static_cast<double>(reps);
    const double m2 = out.m2.value;
    const double var = 36.0 * m2 * m2 * sample_variance(x2) + sample_variance(x4) - 12.0 * m2 * sample_covariance(x2, x4);
    out.excess = {out.m4.value - 3.0 * m2 * m2, std::sqrt(std::max(0.0, var) / r)};
    return out;
}

double min_eigenvalue(const std::vector<std::vector<double>>& matrix) {
    const auto k = static_cast<Eigen::Index>(matrix.size());
    require(k >= 1, "matrix must be nonempty");
    Eigen::MatrixXd m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        require(matrix[static_cast<std::size_t>(i)].size() == matrix.size(), "matrix must be square");
        for (Eigen::Index j = 0; j < k; ++j) {
            m(i, j) = 0.5 * (matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                             matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

CovarianceEstimate covariance_matrix_mc(const std::vector<BlockFactor>& factors, std::size_t n,
                                        const McOptions& options, std::size_t bootstrap) {
    require(!factors.empty(), "covariance estimate needs at least one factor");
    require(options.reps >= 3, "covariance estimate needs at least three replicas");
    const Source& source = factors.front().source();
    std::size_t max_ell = 1;
    for (const BlockFactor& f : factors) {
        require(&f.source() == &source || f.source().describe() == source.describe(),
                "all factors must share one source");
        require(n >= f.ell(), "n must be at least every factor's ell");
        max_ell = std::max(max_ell, f.ell());
    }
    const std::size_t k = factors.size();
    const std::size_t reps = options.reps;
    std::vector<std::vector<double>> sums(k, std::vector<double>(reps));
    parallel_for(reps, options.workers, [&](std::size_t begin, std::size_t end) {
        DrawBuffer buffer(source);
        for (std::size_t r = begin; r < end; ++r) {
            auto eng = substream(options.seed, r);
            buffer.draw(eng, n + max_ell - 1);
            for (std::size_t i = 0; i < k; ++i) sums[i][r] = buffer.window_sum(factors[i], 0, n);
        }
    });

    CovarianceEstimate out;
    out.n = n;
    out.reps = reps;
    out.seed = options.seed;
    out.bootstrap = bootstrap;
    for (const BlockFactor& f : factors) out.labels.push_back(f.traits().name);
    const double nd = static_cast<double>(n);
    out.matrix.assign(k, std::vector<double>(k));
    out.std_errors.assign(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const Estimate c = jackknife_covariance(sums[i], sums[j]);
            out.matrix[i][j] = out.matrix[j][i] = c.value / nd;
            out.std_errors[i][j] = out.std_errors[j][i] = c.std_error / nd;
        }
    }
    out.min_eigenvalue = min_eigenvalue(out.matrix);

    if (bootstrap > 0) {
        auto eng = substream(derive_seed(options.seed, 0xb0075742), 0);
        std::uniform_int_distribution<std::size_t> pick(0, reps - 1);
        std::vector<double> eigen(bootstrap);
        std::vector<std::size_t> idx(reps);
        std::vector<double> means(k);
        std::vector<std::vector<double>> m(k, std::vector<double>(k));
        for (std::size_t b = 0; b < bootstrap; ++b) {
            for (auto& v : idx) v = pick(eng);
            for (std::size_t i = 0; i < k; ++i) {
                CompensatedSum s;
                for (std::size_t r : idx) s.add(sums[i][r]);
                means[i] = s.value() / static_cast<double>(reps);
            }
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = i; j < k; ++j) {
                    CompensatedSum s;
                    for (std::size_t r : idx) s.add((sums[i][r] - means[i]) * (sums[j][r] - means[j]));
                    m[i][j] = m[j][i] = s.value() / (static_cast<double>(reps - 1) * nd);
                }
            }
            eigen[b] = min_eigenvalue(m);
        }
        std::sort(eigen.begin(), eigen.end());
        const double last = static_cast<double>(bootstrap - 1);
        out.ci_low = eigen[static_cast<std::size_t>(std::floor(0.025 * last))];
        out.ci_high = eigen[static_cast<std::size_t>(std::ceil(0.975 * last))];
    }
    return out;
}

}  // namespace mdep
