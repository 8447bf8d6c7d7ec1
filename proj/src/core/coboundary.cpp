#include "mdep/coboundary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "exact_util.hpp"
#include "mdep/error.hpp"
#include "mdep/parallel.hpp"
#include "mdep/rng.hpp"
#include "mdep/sample_path.hpp"

namespace mdep {

const char* to_string(Verdict v) noexcept {
    return v == Verdict::degenerate ? "degenerate" : "nondegenerate";
}

std::vector<double> window_values(const Source& source, std::size_t code, std::size_t length) {
    std::vector<double> out;
    for (std::size_t digit : decode_window(code, source.alphabet_size(), length)) {
        out.push_back(source.atoms()[digit].value);
    }
    return out;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

inline bool negligible(double x, double tol) { return std::abs(x) <= tol; }
inline bool negligible(const Rational& x, double) { return x == 0; }
inline double as_double(double x) { return x; }
inline double as_double(const Rational& x) { return to_double(x); }

/// De Bruijn graph over an alphabet of size a: vertices a^(ell-1), edges a^ell.
struct WindowGraph {
    std::size_t a;
    std::size_t vertices;
    std::size_t edges;

    std::size_t tail(std::size_t e) const { return e / a; }
    std::size_t head(std::size_t e) const { return e % vertices; }
    std::size_t out_edge(std::size_t v, std::size_t symbol) const { return v * a + symbol; }
    std::size_t in_edge(std::size_t v, std::size_t symbol) const { return symbol * vertices + v; }
};

template <class T>
struct Potential {
    std::vector<T> g;
    std::vector<std::size_t> parent_edge;  // tree edge entering v from the root side
};

/// Directed BFS from the root; g(head) = g(tail) + w along tree edges.
template <class T>
Potential<T> assign_potential(const WindowGraph& graph, const std::vector<T>& weight, std::size_t root,
                              bool reverse) {
    Potential<T> pot;
    pot.g.assign(graph.vertices, T(0));
    pot.parent_edge.assign(graph.vertices, kNone);
    std::vector<char> seen(graph.vertices, 0);
    std::deque<std::size_t> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < graph.a; ++i) {
            const std::size_t symbol = reverse ? graph.a - 1 - i : i;
            const std::size_t e = graph.out_edge(v, symbol);
            const std::size_t h = graph.head(e);
            if (seen[h]) continue;
            seen[h] = 1;
            pot.g[h] = pot.g[v] + weight[e];
            pot.parent_edge[h] = e;
            queue.push_back(h);
        }
    }
    // every atom has positive mass, so the De Bruijn graph is strongly connected
    for (char s : seen) {
        if (!s) fail(ErrorKind::domain, "window graph is not strongly connected");
    }
    return pot;
}

/// For each vertex, the first edge of a shortest directed path back to the root.
std::vector<std::size_t> return_edges(const WindowGraph& graph, std::size_t root) {
    std::vector<std::size_t> next(graph.vertices, kNone);
    std::vector<char> seen(graph.vertices, 0);
    std::deque<std::size_t> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t symbol = 0; symbol < graph.a; ++symbol) {
            const std::size_t e = graph.in_edge(v, symbol);
            const std::size_t t = graph.tail(e);
            if (seen[t]) continue;
            seen[t] = 1;
            next[t] = e;
            queue.push_back(t);
        }
    }
    return next;
}

std::vector<std::size_t> path_from_root(const WindowGraph& graph, const std::vector<std::size_t>& parent,
                                        std::size_t v) {
    std::vector<std::size_t> path;
    while (parent[v] != kNone) {
        path.push_back(parent[v]);
        v = graph.tail(parent[v]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::size_t> path_to_root(const WindowGraph& graph, const std::vector<std::size_t>& next,
                                      std::size_t v, std::size_t root) {
    std::vector<std::size_t> path;
    while (v != root) {
        path.push_back(next[v]);
        v = graph.head(next[v]);
    }
    return path;
}

template <class T>
T walk_weight(const std::vector<T>& weight, const std::vector<std::size_t>& walk) {
    T sum(0);
    for (std::size_t e : walk) sum += weight[e];
    return sum;
}

template <class T>
struct Decomposition {
    bool degenerate = true;
    T mu{};
    std::vector<T> g;
    std::vector<std::size_t> witness;
    T witness_weight{};
    double max_residual = 0.0;
};

template <class T>
Decomposition<T> decompose(const std::vector<T>& table, const std::vector<T>& p, std::size_t ell,
                           const DecomposeOptions& options) {
    const WindowGraph graph{p.size(), *checked_power(p.size(), ell - 1), table.size()};
    require(options.root < graph.vertices, "root vertex out of range");

    Decomposition<T> out;
    const std::vector<T> words = detail::word_probabilities(p, ell);
    for (std::size_t e = 0; e < graph.edges; ++e) out.mu += words[e] * table[e];

    std::vector<T> weight(graph.edges);
    for (std::size_t e = 0; e < graph.edges; ++e) weight[e] = table[e] - out.mu;

    Potential<T> pot = assign_potential(graph, weight, options.root, options.reverse_neighbours);

    std::vector<std::size_t> inconsistent;
    for (std::size_t e = 0; e < graph.edges; ++e) {
        const T residual = pot.g[graph.tail(e)] + weight[e] - pot.g[graph.head(e)];
        out.max_residual = std::max(out.max_residual, std::abs(as_double(residual)));
        if (!negligible(residual, options.tolerance)) inconsistent.push_back(e);
    }
    if (inconsistent.empty()) {
        out.g = std::move(pot.g);
        return out;
    }

    // For an inconsistent edge u->v and any return path P from v, the walks
    // tree(root->u) + e + P and tree(root->v) + P differ in weight by the
    // residual of e, so at least one of them carries nonzero weight.
    out.degenerate = false;
    const std::vector<std::size_t> next = return_edges(graph, options.root);
    double best = -1.0;
    for (std::size_t e : inconsistent) {
        const auto back = path_to_root(graph, next, graph.head(e), options.root);
        auto through = path_from_root(graph, pot.parent_edge, graph.tail(e));
        through.push_back(e);
        through.insert(through.end(), back.begin(), back.end());
        auto around = path_from_root(graph, pot.parent_edge, graph.head(e));
        around.insert(around.end(), back.begin(), back.end());
        for (auto* walk : {&through, &around}) {
            if (walk->empty()) continue;
            const T w = walk_weight(weight, *walk);
            const double magnitude = std::abs(as_double(w));
            if (magnitude > best) {
                best = magnitude;
                out.witness = *walk;
                out.witness_weight = w;
            }
        }
        if (!negligible(out.witness_weight, options.tolerance)) break;
    }
    return out;
}

}  // namespace

CoboundaryResult coboundary_decompose(const BlockFactor& factor, const DecomposeOptions& options) {
    const std::vector<double> table = factor.tabulate(options.budget);
    CoboundaryResult out;
    out.ell = factor.ell();
    out.alphabet = factor.source().alphabet_size();

    if (detail::use_rational(factor, table, options.mode)) {
        const auto d = decompose(detail::rational_table(factor, table),
                                 detail::rational_probabilities(factor.source()), factor.ell(), options);
        out.rational = true;
        out.verdict = d.degenerate ? Verdict::degenerate : Verdict::nondegenerate;
        out.mu = to_double(d.mu);
        out.exact_mu = d.mu;
        out.max_residual = d.max_residual;
        if (d.degenerate) {
            for (const Rational& v : d.g) out.g.push_back(to_double(v));
            out.exact_g = d.g;
        } else {
            out.witness = d.witness;
            out.witness_weight = to_double(d.witness_weight);
            out.exact_witness_weight = d.witness_weight;
        }
        return out;
    }

    const auto d = decompose(table, detail::probabilities(factor.source()), factor.ell(), options);
    out.verdict = d.degenerate ? Verdict::degenerate : Verdict::nondegenerate;
    out.mu = d.mu;
    out.max_residual = d.max_residual;
    if (d.degenerate) {
        out.g = d.g;
    } else {
        out.witness = d.witness;
        out.witness_weight = d.witness_weight;
    }
    return out;
}

double configuration_sum(const BlockFactor& factor, std::span<const double> values) {
    const std::size_t width = factor.window_width();
    const std::size_t d = factor.source().dimension();
    if (values.size() % d != 0 || values.size() < width) {
        fail(ErrorKind::arity, "configuration of " + std::to_string(values.size()) +
                                   " values holds no complete window of width " + std::to_string(width));
    }
    const std::size_t windows = values.size() / d - factor.ell() + 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < windows; ++i) sum += factor.evaluate(values.subspan(i * d, width));
    return sum;
}

Rc2Result rc2_witness_check(const BlockFactor& factor, std::span<const double> left, std::span<const double> right,
                            std::span<const double> middle_a, std::span<const double> middle_b, double tolerance) {
    const std::size_t d = factor.source().dimension();
    const std::size_t boundary = (factor.ell() - 1) * d;
    if (left.size() != boundary || right.size() != boundary) {
        fail(ErrorKind::arity, "boundaries must hold ell-1 = " + std::to_string(factor.ell() - 1) + " source values");
    }
    if (middle_a.size() != middle_b.size()) fail(ErrorKind::arity, "middle configurations differ in length");
    if (middle_a.empty() || middle_a.size() % d != 0) {
        fail(ErrorKind::arity, "middle configurations must hold a positive number of source values");
    }
    if (factor.source().is_continuous() && !factor.traits().locally_constant) {
        fail(ErrorKind::unsupported, "factor '" + factor.traits().name +
                                         "' is not declared locally constant; a single configuration of a "
                                         "continuous source has probability zero");
    }
    auto assemble = [&](std::span<const double> middle) {
        std::vector<double> v(left.begin(), left.end());
        v.insert(v.end(), middle.begin(), middle.end());
        v.insert(v.end(), right.begin(), right.end());
        return v;
    };
    Rc2Result out;
    out.s_a = configuration_sum(factor, assemble(middle_a));
    out.s_b = configuration_sum(factor, assemble(middle_b));
    out.differs = std::abs(out.s_a - out.s_b) > tolerance;
    return out;
}

Estimate cesaro_coboundary_estimate(const BlockFactor& factor, std::span<const double> window, std::size_t n,
                                    const McOptions& options, std::optional<double> mean) {
    const std::size_t ell = factor.ell();
    const std::size_t d = factor.source().dimension();
    if (window.size() != (ell - 1) * d) {
        fail(ErrorKind::arity, "conditioning window must hold ell-1 = " + std::to_string(ell - 1) + " source values");
    }
    for (std::size_t i = 0; i + 1 < ell; ++i) {
        if (!factor.source().contains(window.subspan(i * d, d))) {
            fail(ErrorKind::domain, "conditioning window coordinate " + std::to_string(i) + " is not in the support");
        }
    }
    require(n >= ell, "cesaro estimate needs n >= ell");
    require(options.reps >= 2, "cesaro estimate needs at least two replicas");

    double mu = 0.0;
    if (mean) {
        mu = *mean;
    } else if (factor.source().is_finite()) {
        mu = exact_moments(factor, {.mode = ArithmeticMode::floating}).mean;
    } else if (factor.traits().mean) {
        mu = *factor.traits().mean;
    } else {
        McOptions pilot = options;
        pilot.seed = derive_seed(options.seed, 0xce5a80);
        mu = mean_estimate(replica_sums(factor, n, pilot)).value / static_cast<double>(n);
    }

    // buffer index i holds xi_{k-n+i}; the conditioned values sit at n+1..n+ell-1
    std::vector<double> averages(options.reps);
    parallel_for(options.reps, options.workers, [&](std::size_t begin, std::size_t end) {
        DrawBuffer buffer(factor.source());
        std::vector<double> x;
        for (std::size_t r = begin; r < end; ++r) {
            auto eng = substream(options.seed, r);
            buffer.draw(eng, n + ell);
            for (std::size_t j = 0; j + 1 < ell; ++j) buffer.set(n + 1 + j, window.subspan(j * d, d));
            x.clear();
            buffer.window_values(factor, 0, n + 1, x);
            double suffix = 0.0;
            double total = 0.0;
            for (std::size_t i = n + 1; i-- > 0;) {
                suffix += x[i] - mu;
                total += suffix;
            }
            averages[r] = total / static_cast<double>(n + 1);
        }
    });
    return mean_estimate(averages);
}

}  // namespace mdep
