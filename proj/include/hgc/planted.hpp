#ifndef HGC_PLANTED_HPP
#define HGC_PLANTED_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hgc/hypergraph.hpp"
#include "hgc/rng.hpp"

namespace hgc {

// C(a, b) as a real, with C(a,b) = 0 for b > a or a < 0, C(a,0) = 1 for a >= 0.
inline double binom(long a, long b) {
    if (b < 0 || a < 0 || b > a) return 0.0;
    if (b > a - b) b = a - b;
    double r = 1.0;
    for (long i = 1; i <= b; ++i) r = r * static_cast<double>(a - b + i) / static_cast<double>(i);
    return r;
}

// Exact integer C(a, b); throws on overflow.
inline std::uint64_t binom_u64(long a, long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    std::uint64_t r = 1;
    for (long i = 1; i <= b; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(a - b + i);
        if (r > UINT64_MAX / num) throw std::overflow_error("binom_u64 overflow");
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

struct PlantedParams {
    int n = 0;       // per-class size; |V| = k*n
    int k = 2;       // planted classes
    int M = 2;       // dimension, edge sizes 2..M
    std::vector<double> p;  // p[m] for m in [2, M]; p[0], p[1] unused
    std::uint64_t seed = 0;
};

inline void validate(const PlantedParams& params) {
    if (params.n < 1) throw std::invalid_argument("planted: n must be >= 1");
    if (params.k < 2) throw std::invalid_argument("planted: k must be >= 2");
    if (params.M < 2) throw std::invalid_argument("planted: M must be >= 2");
    if (static_cast<long>(params.k) * params.n < params.M)
        throw std::invalid_argument("planted: k*n must be >= M");
    if (static_cast<int>(params.p.size()) < params.M + 1)
        throw std::invalid_argument("planted: p must cover sizes 2..M");
    for (int m = 2; m <= params.M; ++m)
        if (params.p[m] < 0.0 || params.p[m] > 1.0)
            throw std::invalid_argument("planted: p_m outside [0,1]");
}

// Class blocks are contiguous: vertices c*n+1 .. (c+1)*n get color c.
inline Coloring planted_coloring(const PlantedParams& params) {
    Coloring c;
    c.k = params.k;
    c.colors.resize(static_cast<std::size_t>(params.k) * params.n);
    for (std::size_t i = 0; i < c.colors.size(); ++i)
        c.colors[i] = static_cast<int>(i) / params.n;
    return c;
}

namespace detail {

inline int planted_class(int v, int n) { return (v - 1) / n; }

inline bool monochromatic(const Edge& e, int n) {
    const int c0 = planted_class(e.front(), n);
    for (int v : e)
        if (planted_class(v, n) != c0) return false;
    return true;
}

// Number of non-monochromatic m-subsets of k*n vertices.
inline double cross_count(int n, int k, int m) {
    return binom(static_cast<long>(k) * n, m) - k * binom(n, m);
}

// Per-subset Bernoulli over all m-subsets in lexicographic order.
inline void sample_exact(std::vector<Edge>& out, int n, int k, int m, double p, Rng& rng) {
    const int nv = k * n;
    Edge e(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
        if (!monochromatic(e, n) && rng.bernoulli(p)) out.push_back(e);
        // next lexicographic combination
        int i = m - 1;
        while (i >= 0 && e[static_cast<std::size_t>(i)] == nv - (m - 1 - i)) --i;
        if (i < 0) break;
        ++e[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Binomial edge count, then that many distinct non-monochromatic subsets
// uniformly via rejection.
inline void sample_binomial(std::vector<Edge>& out, int n, int k, int m, double p, Rng& rng) {
    const int nv = k * n;
    const std::uint64_t cross = binom_u64(nv, m) - static_cast<std::uint64_t>(k) * binom_u64(n, m);
    const std::uint64_t count = rng.binomial(cross, p);
    std::set<Edge> chosen;
    Edge e(static_cast<std::size_t>(m));
    while (chosen.size() < count) {
        // Floyd's algorithm for m distinct vertices
        e.clear();
        for (int j = nv - m; j < nv; ++j) {
            int t = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(j) + 1)) + 1;
            if (std::find(e.begin(), e.end(), t) != e.end()) t = j + 1;
            e.push_back(t);
        }
        std::sort(e.begin(), e.end());
        if (monochromatic(e, n)) continue;
        chosen.insert(e);
    }
    out.insert(out.end(), chosen.begin(), chosen.end());
}

}  // namespace detail

// Draws a hypergraph from the planted model: every non-monochromatic
// m-subset is an edge independently with probability p_m; monochromatic
// subsets never appear. Deterministic given params.seed. The two sampling
// strategies below are distributionally identical; the cutoff picks the
// cheaper one.
inline std::pair<Hypergraph, Coloring> sample(const PlantedParams& params) {
    validate(params);
    constexpr double kExactCutoff = 1e6;
    Hypergraph h;
    h.num_vertices = params.k * params.n;
    for (int m = 2; m <= params.M; ++m) {
        const double p = params.p[static_cast<std::size_t>(m)];
        if (p <= 0.0) continue;
        const double cross = detail::cross_count(params.n, params.k, m);
        if (cross <= 0.0) continue;
        if (cross <= kExactCutoff) {
            Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(m), 0xA));
            detail::sample_exact(h.edges, params.n, params.k, m, p, rng);
        } else {
            Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(m), 0xB));
            detail::sample_binomial(h.edges, params.n, params.k, m, p, rng);
        }
    }
    std::sort(h.edges.begin(), h.edges.end());
    return {std::move(h), planted_coloring(params)};
}

// Exact expectation: sum_m p_m * (C(kn,m) - k*C(n,m)). The headline
// density condition counts C(2n,m) including monochromatic subsets; the
// ratio of this exact count to that one lies in [1 - 2^{1-m}, 1].
inline double expected_edge_count(const PlantedParams& params) {
    validate(params);
    double total = 0.0;
    for (int m = 2; m <= params.M; ++m)
        total += params.p[static_cast<std::size_t>(m)] * detail::cross_count(params.n, params.k, m);
    return total;
}

// d such that sum_m p_m C(kn,m) = d * n * ln n (for k = 2 this is the
// constant in the edge-density condition, verbatim).
inline double density_coefficient(const PlantedParams& params) {
    validate(params);
    if (params.n < 2) throw std::domain_error("density_coefficient requires n >= 2");
    double lhs = 0.0;
    for (int m = 2; m <= params.M; ++m)
        lhs += params.p[static_cast<std::size_t>(m)] *
               binom(static_cast<long>(params.k) * params.n, m);
    return lhs / (params.n * std::log(static_cast<double>(params.n)));
}

struct DensityProbs {
    std::vector<double> p;  // indexed by size m, 2..M
    bool clamped = false;   // requested density unreachable for some size
};

// Inverse of density_coefficient: p_m = min(1, w_m * d * n * ln n / C(kn,m)).
inline DensityProbs probs_for_density(int n, int M, double d,
                                      const std::vector<double>& weights, int k = 2) {
    if (n < 2) throw std::domain_error("probs_for_density requires n >= 2");
    if (M < 2) throw std::invalid_argument("probs_for_density: M must be >= 2");
    if (d < 0.0) throw std::invalid_argument("probs_for_density: d must be >= 0");
    if (static_cast<int>(weights.size()) < M + 1)
        throw std::invalid_argument("probs_for_density: weights must cover sizes 2..M");
    double wsum = 0.0;
    for (int m = 2; m <= M; ++m) {
        if (weights[static_cast<std::size_t>(m)] < 0.0)
            throw std::invalid_argument("probs_for_density: negative weight");
        wsum += weights[static_cast<std::size_t>(m)];
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("probs_for_density: weights must sum to 1");
    DensityProbs out;
    out.p.assign(static_cast<std::size_t>(M) + 1, 0.0);
    const double target = d * n * std::log(static_cast<double>(n));
    for (int m = 2; m <= M; ++m) {
        const double denom = binom(static_cast<long>(k) * n, m);
        double pm = denom > 0.0 ? weights[static_cast<std::size_t>(m)] * target / denom : 0.0;
        if (pm > 1.0) { pm = 1.0; out.clamped = true; }
        out.p[static_cast<std::size_t>(m)] = pm;
    }
    return out;
}

// Named per-size weight profiles used by the CLI and the sweep harness.
inline std::vector<double> profile_weights(const std::string& name, int M) {
    std::vector<double> w(static_cast<std::size_t>(M) + 1, 0.0);
    if (name == "equal") {
        for (int m = 2; m <= M; ++m) w[static_cast<std::size_t>(m)] = 1.0 / (M - 1);
    } else if (name == "pairs-only") {
        w[2] = 1.0;
    } else {
        throw std::invalid_argument("unknown profile: " + name);
    }
    return w;
}

}  // namespace hgc

#endif
