#include "mdep/gw.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "exact_util.hpp"
#include "mdep/error.hpp"
#include "mdep/parallel.hpp"
#include "mdep/rng.hpp"

namespace mdep {

namespace {

template <class Value>
int match(const OrderedTree& pattern, std::span<const Value> window) {
    const auto& d = pattern.degrees();
    if (window.size() != d.size()) {
        fail(ErrorKind::arity, "window must hold |T| = " + std::to_string(d.size()) + " degrees");
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (window[i] != static_cast<Value>(d[i])) return 0;
    }
    return 1;
}

std::string statistic_name(const OrderedStatistic& stat) {
    std::string name = "gw";
    for (const auto& t : stat.terms()) name += ":" + std::to_string(t.coefficient) + "*" + t.tree.to_string();
    return name;
}

}  // namespace

int gw_degree_indicator(const OrderedTree& pattern, std::span<const std::int64_t> window) {
    return match(pattern, window);
}

int gw_degree_indicator(const OrderedTree& pattern, std::span<const double> window) { return match(pattern, window); }

OrderedTree gw_rotate_to_tree(std::span<const std::int64_t> xi) {
    const std::size_t n = xi.size();
    require(n >= 1, "degree sequence must be nonempty");
    std::int64_t sum = 0;
    std::int64_t lowest = 0;
    std::size_t first_min = 0;
    for (std::size_t i = 0; i < n; ++i) {
        require(xi[i] >= 0, "degrees must be nonnegative");
        sum += xi[i] - 1;
        if (i == 0 || sum < lowest) {
            lowest = sum;
            first_min = i;
        }
    }
    if (sum != -1) fail(ErrorKind::domain, "degree sum must be n-1 for a rotation to be a tree");
    std::vector<std::uint32_t> rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[i] = static_cast<std::uint32_t>(xi[(first_min + 1 + i) % n]);
    if (!is_tree_degree_sequence(rotated)) {
        fail(ErrorKind::domain, "cycle-lemma rotation did not produce a tree (internal invariant)");
    }
    return OrderedTree::from_degrees(std::move(rotated));
}

OrderedTree gw_conditioned_degrees(const OffspringDistribution& offspring, std::size_t n, std::mt19937_64& eng,
                                   std::size_t budget) {
    require(n >= 1, "conditioned tree needs n >= 1");
    const auto target = static_cast<std::int64_t>(n) - 1;
    std::vector<std::int64_t> xi(n);
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        std::int64_t sum = 0;
        bool over = false;
        for (std::size_t i = 0; i < n; ++i) {
            xi[i] = offspring.sample(eng);
            sum += xi[i];
            if (sum > target) {
                over = true;
                break;
            }
        }
        if (!over && sum == target) return gw_rotate_to_tree(xi);
    }
    fail(ErrorKind::resource, "no sequence with Z_n = n-1 among " + std::to_string(budget) +
                                  " draws at n = " + std::to_string(n) + " (observed acceptance rate 0 < " +
                                  std::to_string(1.0 / static_cast<double>(budget)) + ")");
}

OrderedTree gw_conditioned_degrees(const OffspringDistribution& offspring, std::size_t n, std::uint64_t seed,
                                   std::size_t budget) {
    auto eng = substream(seed, 0);
    return gw_conditioned_degrees(offspring, n, eng, budget);
}

std::size_t gw_cyclic_count(const OrderedTree& tree, const OrderedTree& pattern) {
    const auto& d = tree.degrees();
    const auto& p = pattern.degrees();
    const std::size_t n = d.size();
    const std::size_t k = p.size();
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        while (j < k && d[(i + j) % n] == p[j]) ++j;
        count += j == k ? 1 : 0;
    }
    return count;
}

std::size_t gw_subtree_count(std::size_t n, const OrderedTree& pattern, const OffspringDistribution& offspring,
                             std::uint64_t seed) {
    return gw_cyclic_count(gw_conditioned_degrees(offspring, n, seed), pattern);
}

double gw_pattern_probability(const OrderedTree& pattern, const OffspringDistribution& offspring) {
    double p = 1.0;
    for (std::uint32_t d : pattern.degrees()) p *= offspring.pmf(d);
    return p;
}

namespace {

template <class T>
T rational_or_double(double v) {
    if constexpr (std::is_same_v<T, Rational>) {
        return rational_from_double(v);
    } else {
        return v;
    }
}

template <class T>
struct Centering {
    T alpha;
    T beta;
    T mean_f;
    T mean_xi;
    T var_xi;
};

template <class T>
Centering<T> closed_form(const OrderedStatistic& stat, const std::vector<T>& p, const std::vector<T>& coef) {
    T mean_xi = 0;
    T second = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        mean_xi += T(static_cast<long long>(k)) * p[k];
        second += T(static_cast<long long>(k * k)) * p[k];
    }
    const T var_xi = second - mean_xi * mean_xi;
    if (var_xi == T(0)) fail(ErrorKind::domain, "offspring variance is zero");
    T mean_f = 0;
    T cov = 0;
    for (std::size_t j = 0; j < stat.terms().size(); ++j) {
        const auto& d = stat.terms()[j].tree.degrees();
        T prob = 1;
        for (std::uint32_t v : d) prob *= v < p.size() ? p[v] : T(0);
        mean_f += coef[j] * prob;
        // Cov(f_T, xi_i) = P(T)(d_i - E xi) inside the pattern, 0 past it
        const auto k = static_cast<long long>(d.size());
        cov += coef[j] * prob * (T(k - 1) - T(k) * mean_xi);
    }
    const T alpha = cov / var_xi;
    return {alpha, alpha * mean_xi - mean_f, mean_f, mean_xi, var_xi};
}

template <class T>
Centering<T> enumerated(const std::vector<T>& table, const std::vector<T>& p, const std::vector<double>& values,
                        std::size_t ell) {
    const std::size_t a = p.size();
    T mean_xi = 0;
    T second = 0;
    for (std::size_t i = 0; i < a; ++i) {
        const T v = rational_or_double<T>(values[i]);
        mean_xi += v * p[i];
        second += v * v * p[i];
    }
    const T var_xi = second - mean_xi * mean_xi;
    if (var_xi == T(0)) fail(ErrorKind::domain, "source variance is zero");
    const auto words = detail::word_probabilities(p, ell);
    T mean_f = 0;
    T cross = 0;  // E[f * sum_j xi_j]
    for (std::size_t code = 0; code < words.size(); ++code) {
        const auto digits = decode_window(code, a, ell);
        T z = 0;
        for (std::size_t dgt : digits) z += rational_or_double<T>(values[dgt]);
        const T w = words[code] * table[code];
        mean_f += w;
        cross += w * z;
    }
    const T alpha = (cross - mean_f * T(static_cast<long long>(ell)) * mean_xi) / var_xi;
    return {alpha, alpha * mean_xi - mean_f, mean_f, mean_xi, var_xi};
}

template <class T>
AlphaBeta to_alpha_beta(const Centering<T>& c) {
    AlphaBeta ab;
    if constexpr (std::is_same_v<T, Rational>) {
        ab = {to_double(c.alpha), to_double(c.beta), to_double(c.mean_f), to_double(c.mean_xi), to_double(c.var_xi),
              c.alpha, c.beta};
    } else {
        ab = {c.alpha, c.beta, c.mean_f, c.mean_xi, c.var_xi, std::nullopt, std::nullopt};
    }
    return ab;
}

}  // namespace

AlphaBeta gw_alpha_beta(const OrderedStatistic& stat, const OffspringDistribution& offspring) {
    const auto& p = offspring.probabilities();
    if (const auto& exact = offspring.exact_probabilities()) {
        std::vector<Rational> coef;
        for (const auto& t : stat.terms()) coef.push_back(rational_from_double(t.coefficient));
        return to_alpha_beta(closed_form(stat, *exact, coef));
    }
    std::vector<double> coef;
    for (const auto& t : stat.terms()) coef.push_back(t.coefficient);
    return to_alpha_beta(closed_form(stat, p, coef));
}

AlphaBeta gw_alpha_beta(const BlockFactor& factor, std::size_t budget) {
    const Source& source = factor.source();
    if (!source.is_finite()) {
        fail(ErrorKind::unsupported, "alpha and beta need a finite offspring support (declare a truncation)");
    }
    std::vector<double> values;
    for (const Atom& at : source.atoms()) {
        if (at.value != std::floor(at.value) || at.value < 0) {
            fail(ErrorKind::domain, "offspring source values must be nonnegative integers");
        }
        values.push_back(at.value);
    }
    const std::vector<double> table = factor.has_table() ? factor.table() : factor.tabulate(budget);
    if (!checked_power(source.alphabet_size(), factor.ell(), budget)) {
        fail(ErrorKind::resource, "alphabet^ell exceeds the enumeration budget");
    }
    if (detail::use_rational(factor, table, ArithmeticMode::automatic)) {
        return to_alpha_beta(enumerated(detail::rational_table(factor, table), detail::rational_probabilities(source),
                                        values, factor.ell()));
    }
    return to_alpha_beta(enumerated(table, detail::probabilities(source), values, factor.ell()));
}

BlockFactor gw_statistic_factor(const OrderedStatistic& stat, SourcePtr source, std::size_t budget) {
    auto f = [stat](std::span<const double> w) {
        double sum = 0.0;
        for (const auto& t : stat.terms()) sum += t.coefficient * match(t.tree, w.first(t.tree.size()));
        return sum;
    };
    const std::size_t ell = stat.max_size();
    if (source->is_finite()) {
        if (!checked_power(source->alphabet_size(), ell, budget)) {
            fail(ErrorKind::resource, "alphabet^ell exceeds the enumeration budget for the statistic table");
        }
        return BlockFactor::tabulated(std::move(source), ell, f, statistic_name(stat));
    }
    return BlockFactor::from_function(std::move(source), ell, f,
                                      {.name = statistic_name(stat), .locally_constant = false, .mean = std::nullopt});
}

BlockFactor gw_centered_factor(const BlockFactor& raw, const AlphaBeta& ab) {
    const std::string name = raw.traits().name + ":centered";
    if (raw.has_table()) {
        const Source& source = raw.source();
        const std::size_t a = source.alphabet_size();
        const std::size_t stride = *checked_power(a, raw.ell() - 1);
        std::vector<double> table(raw.table().size());
        for (std::size_t code = 0; code < table.size(); ++code) {
            table[code] = raw.table()[code] - ab.alpha * source.atoms()[code / stride].value + ab.beta;
        }
        std::optional<std::vector<Rational>> exact;
        if (ab.exact_alpha && ab.exact_beta) {
            auto base = detail::rational_table(raw, raw.table());
            exact.emplace();
            for (std::size_t code = 0; code < base.size(); ++code) {
                exact->push_back(base[code] - *ab.exact_alpha * rational_from_double(source.atoms()[code / stride].value) +
                                 *ab.exact_beta);
            }
        }
        return BlockFactor::from_table(raw.source_ptr(), raw.ell(), std::move(table), std::move(exact), name);
    }
    auto f = [raw, alpha = ab.alpha, beta = ab.beta](std::span<const double> w) {
        return raw.evaluate_unchecked(w) - alpha * w[0] + beta;
    };
    return BlockFactor::from_function(raw.source_ptr(), raw.ell(), f, {.name = name, .mean = 0.0});
}

GwSigma gw_sigma_squared(const OrderedStatistic& stat, const OffspringDistribution& offspring, GwMode mode,
                         std::size_t n, const McOptions& options) {
    GwSigma out;
    out.mode = mode;
    out.ab = gw_alpha_beta(stat, offspring);
    out.approximate = offspring.is_approximate();
    out.truncated_mass = offspring.truncated_mass();
    if (mode == GwMode::exact) {
        const BlockFactor x = gw_centered_factor(gw_statistic_factor(stat, offspring.exact_source()), out.ab);
        const MomentSummary m = exact_moments(x);
        out.sigma2 = m.sigma2;
        if (m.exact) out.exact_sigma2 = m.exact->back();
        return out;
    }
    const BlockFactor x = gw_centered_factor(gw_statistic_factor(stat, offspring.sampling_source()), out.ab);
    const McVariance mc = sigma_squared_mc(x, n, options);
    out.sigma2 = mc.sigma2.value;
    out.std_error = mc.sigma2.std_error;
    return out;
}

Estimate gw_centering_covariance_mc(const OrderedStatistic& stat, const OffspringDistribution& offspring,
                                    std::size_t n, const McOptions& options) {
    const std::size_t ell = stat.max_size();
    require(n >= ell, "covariance estimate needs n >= max |T_j|");
    require(options.reps >= 3, "covariance estimate needs at least three replicas");
    const AlphaBeta ab = gw_alpha_beta(stat, offspring);
    std::vector<double> y(options.reps);
    std::vector<double> z(options.reps);
    parallel_for(options.reps, options.workers, [&](std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> xi(n + ell - 1);
        for (std::size_t r = begin; r < end; ++r) {
            auto eng = substream(options.seed, r);
            std::int64_t zn = 0;
            for (std::size_t i = 0; i < n; ++i) {
                xi[i] = offspring.sample(eng);
                zn += xi[i];
            }
            for (std::size_t i = n; i < xi.size(); ++i) xi[i] = xi[i - n];
            double s = 0.0;
            for (const auto& t : stat.terms()) {
                const std::size_t k = t.tree.size();
                std::size_t count = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    count += static_cast<std::size_t>(match(t.tree, std::span<const std::int64_t>(xi).subspan(i, k)));
                }
                s += t.coefficient * static_cast<double>(count);
            }
            z[r] = static_cast<double>(zn);
            y[r] = s - ab.alpha * z[r];
        }
    });
    const Estimate cov = jackknife_covariance(y, z);
    const double nn = static_cast<double>(n);
    return {cov.value / nn, cov.std_error / nn};
}

std::vector<GwDensity> gw_density_mc(const std::vector<OrderedTree>& patterns, const OffspringDistribution& offspring,
                                     std::size_t n, const McOptions& options, std::size_t budget) {
    require(!patterns.empty(), "no fringe patterns given");
    require(n >= 1 && options.reps >= 2, "density estimate needs n >= 1 and at least two replicas");
    const std::size_t p = patterns.size();
    std::vector<double> densities(p * options.reps);
    parallel_for(options.reps, options.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            auto eng = substream(options.seed, r);
            const OrderedTree tree = gw_conditioned_degrees(offspring, n, eng, budget);
            for (std::size_t j = 0; j < p; ++j) {
                densities[j * options.reps + r] =
                    static_cast<double>(gw_cyclic_count(tree, patterns[j])) / static_cast<double>(n);
            }
        }
    });
    std::vector<GwDensity> out;
    for (std::size_t j = 0; j < p; ++j) {
        out.push_back({patterns[j],
                       mean_estimate(std::span<const double>(densities).subspan(j * options.reps, options.reps)),
                       gw_pattern_probability(patterns[j], offspring)});
    }
    return out;
}

GwCertificate gw_degeneracy_argument(const OrderedStatistic& stat, const OffspringDistribution& offspring) {
    const auto support = offspring.support();
    const auto positive = offspring.positive_support();
    if (support.empty() || support.front() != 0 || positive.size() < 2) {
        fail(ErrorKind::unsupported,
             "offspring support must contain 0 and two distinct positive degrees; the case xi in {0, r} is "
             "excluded from the positivity argument");
    }
    GwCertificate cert;
    cert.ab = gw_alpha_beta(stat, offspring);
    const BlockFactor raw = gw_statistic_factor(stat, offspring.exact_source());
    const BlockFactor x = gw_centered_factor(raw, cert.ab);
    const std::size_t ell = raw.ell();

    for (std::int64_t j : positive) {
        const std::vector<double> config(3 * ell, static_cast<double>(j));
        std::size_t matches = 0;
        for (const auto& t : stat.terms()) {
            const std::size_t k = t.tree.size();
            for (std::size_t i = 0; i + k <= config.size(); ++i) {
                matches += static_cast<std::size_t>(match(t.tree, std::span<const double>(config).subspan(i, k)));
            }
        }
        cert.constant_checks.push_back(
            {j, matches, -cert.ab.alpha * static_cast<double>(j) + cert.ab.beta});
    }
    cert.forces_zero_alpha_beta = positive.size() >= 2;

    const auto& t1 = stat.first().tree.degrees();
    const std::size_t k = t1.size();
    const std::size_t middle = 2 * ell + k;
    auto attempt = [&](std::int64_t b, std::optional<std::int64_t> replacement) {
        const auto bg = static_cast<double>(b);
        cert.background = b;
        cert.left.assign(ell - 1, bg);
        cert.right.assign(ell - 1, bg);
        cert.middle_a.assign(middle, bg);
        cert.middle_b = cert.middle_a;
        for (std::size_t i = 0; i < k; ++i) {
            cert.middle_b[ell + i] = replacement ? static_cast<double>(*replacement) : static_cast<double>(t1[i]);
        }
        if (replacement) {
            cert.embedded_at.reset();
            cert.replacement = *replacement;
        } else {
            cert.embedded_at = ell;
            cert.replacement = 0;
        }
        cert.rc2 = rc2_witness_check(x, cert.left, cert.right, cert.middle_a, cert.middle_b);
        return cert.rc2.differs;
    };
    bool found = false;
    for (auto it = positive.rbegin(); it != positive.rend() && !found; ++it) found = attempt(*it, std::nullopt);
    for (auto it = positive.rbegin(); it != positive.rend() && !found; ++it) {
        for (std::int64_t other : positive) {
            if (other != *it && (found = attempt(*it, other))) break;
        }
    }
    if (!found) fail(ErrorKind::domain, "no witness pair separates the block sums; sigma^2 may be 0");

    auto assemble = [&](const std::vector<double>& mid) {
        std::vector<double> v = cert.left;
        v.insert(v.end(), mid.begin(), mid.end());
        v.insert(v.end(), cert.right.begin(), cert.right.end());
        return v;
    };
    cert.f_a = configuration_sum(raw, assemble(cert.middle_a));
    cert.f_b = configuration_sum(raw, assemble(cert.middle_b));
    cert.positive = true;
    return cert;
}

}  // namespace mdep
