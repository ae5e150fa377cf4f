#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hgc/spectral.hpp"

using namespace hgc;

// Independent oracle: for each edge, for each ordered pair in it (and each
// single vertex for the diagonal), add 1/|e|.
static std::vector<double> brute_force_matrix(const Hypergraph& h) {
    const int d = h.num_vertices;
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    for (const Edge& e : h.edges) {
        const double w = 1.0 / static_cast<double>(e.size());
        for (int u : e) {
            m[static_cast<std::size_t>(u - 1) * d + (u - 1)] += w;
            for (int v : e)
                if (v != u) m[static_cast<std::size_t>(u - 1) * d + (v - 1)] += w;
        }
    }
    return m;
}

static Hypergraph random_hypergraph(Rng& rng, int max_vertices = 12, int max_edges = 50,
                                    int max_size = 5) {
    Hypergraph h;
    h.num_vertices = 2 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_vertices - 1)));
    const int cap = std::min(max_size, h.num_vertices);
    const int num_edges = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_edges + 1)));
    for (int i = 0; i < num_edges; ++i) {
        const int size = 2 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(cap - 1)));
        Edge e;
        while (static_cast<int>(e.size()) < size) {
            int v = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(h.num_vertices)));
            if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        h.edges.push_back(std::move(e));
    }
    return h;
}

static PlantedParams make_params(int n, int M, std::vector<std::pair<int, double>> probs) {
    PlantedParams p;
    p.n = n;
    p.k = 2;
    p.M = M;
    p.p.assign(static_cast<std::size_t>(M) + 1, 0.0);
    for (auto [m, pm] : probs) p.p[static_cast<std::size_t>(m)] = pm;
    return p;
}

TEST_CASE("build_matrix worked example") {
    Hypergraph h;
    h.num_vertices = 4;
    h.edges = {{1, 3}, {1, 2, 4}};
    const WeightedAdjacency a = build_matrix(h);
    CHECK(a.entry(0, 2) == doctest::Approx(0.5));
    CHECK(a.entry(0, 1) == doctest::Approx(1.0 / 3));
    CHECK(a.entry(0, 3) == doctest::Approx(1.0 / 3));
    CHECK(a.entry(1, 3) == doctest::Approx(1.0 / 3));
    CHECK(a.entry(1, 2) == 0.0);
    CHECK(a.entry(2, 3) == 0.0);
    CHECK(a.entry(0, 0) == doctest::Approx(5.0 / 6));
    CHECK(a.entry(1, 1) == doctest::Approx(1.0 / 3));
    CHECK(a.entry(2, 2) == doctest::Approx(0.5));
    CHECK(a.entry(3, 3) == doctest::Approx(1.0 / 3));
    // row 1 sums to deg(1) = 2
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += a.entry(0, j);
    CHECK(row == doctest::Approx(2.0));
}

TEST_CASE("build_matrix of an edgeless hypergraph is zero") {
    Hypergraph h;
    h.num_vertices = 3;
    const WeightedAdjacency a = build_matrix(h);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(a.entry(i, j) == 0.0);
}

TEST_CASE("property: build_matrix matches the brute-force oracle") {
    Rng rng(31337);
    for (int rep = 0; rep < 100; ++rep) {
        const Hypergraph h = random_hypergraph(rng);
        const WeightedAdjacency a = build_matrix(h);
        const std::vector<double> oracle = brute_force_matrix(h);
        for (int i = 0; i < h.num_vertices; ++i)
            for (int j = 0; j < h.num_vertices; ++j)
                CHECK(std::abs(a.entry(i, j) -
                               oracle[static_cast<std::size_t>(i) * h.num_vertices + j]) <= 1e-12);
    }
}

TEST_CASE("property: row sums equal vertex degrees") {
    Rng rng(4242);
    for (int rep = 0; rep < 50; ++rep) {
        const Hypergraph h = random_hypergraph(rng);
        const WeightedAdjacency a = build_matrix(h);
        std::vector<int> deg(static_cast<std::size_t>(h.num_vertices), 0);
        for (const Edge& e : h.edges)
            for (int v : e) ++deg[static_cast<std::size_t>(v - 1)];
        for (int i = 0; i < h.num_vertices; ++i) {
            double row = 0.0;
            for (int j = 0; j < h.num_vertices; ++j) row += a.entry(i, j);
            CHECK(std::abs(row - deg[static_cast<std::size_t>(i)]) <= 1e-9);
        }
    }
}

TEST_CASE("edge-backed matvec agrees with dense matvec") {
    Rng rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        const Hypergraph h = random_hypergraph(rng);
        const WeightedAdjacency dense = build_matrix(h);
        // Edge-backed product by streaming the same edges
        std::vector<double> x(static_cast<std::size_t>(h.num_vertices));
        for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
        std::vector<double> yd;
        dense.matvec(x, yd);
        std::vector<double> ye(x.size(), 0.0);
        for (const Edge& e : h.edges) {
            double s = 0.0;
            for (int v : e) s += x[static_cast<std::size_t>(v - 1)];
            s /= static_cast<double>(e.size());
            for (int v : e) ye[static_cast<std::size_t>(v - 1)] += s;
        }
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(yd[i] == doctest::Approx(ye[i]));
    }
}

TEST_CASE("moments closed forms") {
    const ModelMoments mm = moments(make_params(2, 2, {{2, 1.0}}));
    CHECK(mm.alpha1 == doctest::Approx(0.5));
    CHECK(mm.alpha2 == doctest::Approx(0.5));
    CHECK(mm.alpha3 == doctest::Approx(1.0));
    // smallest eigenvalue alpha3 - n*alpha2 = 0, eigen-gap n*alpha2 = 1
    const auto eigs = k_smallest_eigenvectors(mm.expected, 2, 1e-11);
    CHECK(std::abs(eigs[0].value - 0.0) <= 1e-10);
    CHECK(std::abs((eigs[1].value - eigs[0].value) - 1.0) <= 1e-8);

    const ModelMoments zero = moments(make_params(3, 3, {}));
    CHECK(zero.alpha1 == 0.0);
    CHECK(zero.alpha2 == 0.0);
    CHECK(zero.alpha3 == 0.0);
    CHECK(zero.eta == 0.0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(zero.expected.entry(i, j) == 0.0);

    CHECK(moments(make_params(4, 2, {{2, 1.0}})).eta == doctest::Approx(3.0 / 32.0));

    PlantedParams k3 = make_params(2, 2, {{2, 0.5}});
    k3.k = 3;
    CHECK_THROWS_AS(moments(k3), std::invalid_argument);
}

TEST_CASE("expected matrix structure matches the per-entry counting formulas") {
    const auto params = make_params(5, 3, {{2, 0.4}, {3, 0.2}});
    const ModelMoments mm = moments(params);
    const int n = params.n;
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j) {
            double want;
            if (i == j) want = mm.alpha1 - mm.alpha2 + mm.alpha3;
            else if (i / n == j / n) want = mm.alpha1 - mm.alpha2;
            else want = mm.alpha1;
            CHECK(mm.expected.entry(i, j) == doctest::Approx(want));
        }
    }
}

TEST_CASE("smallest_eigenpair on simple matrices") {
    const auto diag = WeightedAdjacency::from_entries(2, {1, 0, 0, 2});
    const EigenResult r = smallest_eigenpair(diag);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(r.vector[0]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(r.vector[1]) <= 1e-4);

    const ModelMoments mm = moments(make_params(2, 2, {{2, 1.0}}));
    const EigenResult s = smallest_eigenpair(mm.expected, 1e-10);
    CHECK(s.converged);
    CHECK(std::abs(s.value) <= 1e-9);
    CHECK(s.vector[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(s.vector[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(s.vector[2] == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(s.vector[3] == doctest::Approx(-0.5).epsilon(1e-6));

    const auto zero = WeightedAdjacency::from_entries(3, std::vector<double>(9, 0.0));
    const EigenResult z = smallest_eigenpair(zero);
    CHECK(z.converged);
    CHECK(z.value == doctest::Approx(0.0));
    CHECK(detail::norm2(z.vector) == doctest::Approx(1.0));
}

TEST_CASE("k_smallest_eigenvectors contract") {
    const auto diag = WeightedAdjacency::from_entries(3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
    const auto eigs = k_smallest_eigenvectors(diag, 2);
    REQUIRE(eigs.size() == 2);
    CHECK(eigs[0].value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eigs[1].value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(eigs[0].vector[2]) <= 1e-4);
    CHECK(std::abs(eigs[1].vector[2]) <= 1e-4);
    CHECK(std::abs(detail::dot(eigs[0].vector, eigs[1].vector)) <= 1e-8);

    // count=1 is consistent with smallest_eigenpair
    const auto one = k_smallest_eigenvectors(diag, 1);
    const auto pair = smallest_eigenpair(diag);
    CHECK(one[0].value == doctest::Approx(pair.value));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(one[0].vector[i] == doctest::Approx(pair.vector[i]));
}

TEST_CASE("3-block structured matrix gives class-wise constant eigenvectors") {
    const int n = 5, classes = 3, dim = n * classes;
    const double a1 = 1.0, a2 = 0.8, a3 = 2.0;
    std::vector<double> entries(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double v;
            if (i == j) v = a1 - a2 + a3;
            else if (i / n == j / n) v = a1 - a2;
            else v = a1;
            entries[static_cast<std::size_t>(i) * dim + j] = v;
        }
    const auto m = WeightedAdjacency::from_entries(dim, std::move(entries));
    const auto eigs = k_smallest_eigenvectors(m, 2, 1e-9);
    for (const EigenResult& e : eigs) {
        CHECK(e.value == doctest::Approx(a3 - n * a2).epsilon(1e-6));
        for (int c = 0; c < classes; ++c) {
            const double first = e.vector[static_cast<std::size_t>(c) * n];
            for (int i = 1; i < n; ++i)
                CHECK(std::abs(e.vector[static_cast<std::size_t>(c) * n + i] - first) <= 1e-6);
        }
    }
}

TEST_CASE("property: eigen contract (Rayleigh quotient and near-minimality)") {
    Rng rng(808);
    for (int rep = 0; rep < 10; ++rep) {
        const Hypergraph h = random_hypergraph(rng, 10, 30, 4);
        if (h.num_vertices < 2) continue;
        const WeightedAdjacency a = build_matrix(h);
        const double tol = 1e-8;
        const EigenResult r = smallest_eigenpair(a, tol);
        std::vector<double> ax;
        a.matvec(r.vector, ax);
        CHECK(detail::dot(r.vector, ax) == doctest::Approx(r.value).epsilon(1e-7));
        const double slack = 2.0 * tol * std::max(1.0, a.inf_norm());
        for (int probe = 0; probe < 100; ++probe) {
            std::vector<double> v(r.vector.size());
            for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
            const double nrm = detail::norm2(v);
            for (double& x : v) x /= nrm;
            a.matvec(v, ax);
            CHECK(r.value <= detail::dot(v, ax) + slack);
        }
    }
}

TEST_CASE("smallest_eigenpair output is deterministic") {
    Rng rng(999);
    const Hypergraph h = random_hypergraph(rng);
    const WeightedAdjacency a = build_matrix(h);
    const EigenResult r1 = smallest_eigenpair(a);
    const EigenResult r2 = smallest_eigenpair(a);
    CHECK(r1.value == r2.value);
    CHECK(r1.vector == r2.vector);  // bitwise
}

TEST_CASE("deviation diagnostic") {
    const auto params = make_params(4, 2, {{2, 0.5}});

    SUBCASE("A equal to its expectation has zero deviation") {
        const ModelMoments mm = moments(params);
        const auto diag = deviation_diagnostic(mm.expected, params);
        CHECK(diag.spectral_norm_dev <= 1e-6);
        CHECK(diag.within_bound);
    }

    SUBCASE("empty model, empty sample") {
        const auto zero_params = make_params(4, 2, {});
        Hypergraph h;
        h.num_vertices = 8;
        const auto diag = deviation_diagnostic(build_matrix(h), zero_params);
        CHECK(diag.spectral_norm_dev <= 1e-9);
        CHECK(diag.bernstein_bound == 0.0);
        CHECK(diag.within_bound);
    }

    SUBCASE("sampled deviation stays below the concentration bound") {
        auto p = make_params(32, 2, {});
        p.p = probs_for_density(32, 2, 15.0, profile_weights("pairs-only", 2)).p;
        int within = 0;
        const int trials = 100;
        for (int t = 0; t < trials; ++t) {
            p.seed = 5000 + t;
            const auto [h, planted] = sample(p);
            if (deviation_diagnostic(build_matrix(h), p).within_bound) ++within;
        }
        CHECK(within >= 95);
    }
}
