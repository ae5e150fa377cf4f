#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hgc/hypergraph.hpp"
#include "hgc/rng.hpp"

using namespace hgc;

TEST_CASE("verify_proper basic verdicts") {
    Hypergraph h;
    h.num_vertices = 4;
    h.edges = {{1, 3}, {2, 3, 4}};

    Coloring c;
    c.k = 2;
    c.colors = {0, 0, 1, 1};
    auto verdict = verify_proper(h, c);
    CHECK(verdict.proper);
    CHECK(verdict.monochromatic_edges.empty());

    c.colors = {0, 0, 0, 0};
    verdict = verify_proper(h, c);
    CHECK_FALSE(verdict.proper);
    CHECK(verdict.monochromatic_edges == std::vector<std::size_t>{0, 1});

    Hypergraph empty;
    empty.num_vertices = 4;
    CHECK(verify_proper(empty, c).proper);
}

TEST_CASE("verify_proper rejects partial colorings") {
    Hypergraph h;
    h.num_vertices = 3;
    h.edges = {{1, 2, 3}};
    Coloring c;
    c.colors = {0, 1};  // vertex 3 missing
    CHECK_THROWS_WITH_AS(verify_proper(h, c), doctest::Contains("vertex 3"),
                         std::invalid_argument);
}

TEST_CASE("read_hypergraph parses and canonicalizes") {
    Hypergraph h = read_hypergraph("p hg 4 2\n1 3\n2 3 4\n");
    CHECK(h.num_vertices == 4);
    REQUIRE(h.edges.size() == 2);
    CHECK(h.edges[0] == Edge{1, 3});
    CHECK(h.edges[1] == Edge{2, 3, 4});
    CHECK(h.dimension() == 3);

    h = read_hypergraph("p hg 4 1\nc a comment\n3 1\n");
    CHECK(h.edges[0] == Edge{1, 3});

    CHECK_THROWS_WITH_AS(read_hypergraph("p hg 2 1\n5 1\n"),
                         doctest::Contains("vertex 5 out of range"), ParseError);
    CHECK_THROWS_AS(read_hypergraph("p wrong 2 1\n1 2\n"), ParseError);
    CHECK_THROWS_AS(read_hypergraph("p hg 3 1\n2\n"), ParseError);
}

TEST_CASE("coloring file round trip") {
    Coloring c;
    c.k = 3;
    c.colors = {0, 2, 1, 0};
    Coloring back = read_coloring(write_coloring(c));
    CHECK(back.colors == c.colors);
    CHECK(back.k == 3);
}

static Hypergraph random_hypergraph(Rng& rng) {
    Hypergraph h;
    h.num_vertices = 2 + static_cast<int>(rng.uniform_int(11));
    const int max_size = std::min(5, h.num_vertices);
    const int num_edges = static_cast<int>(rng.uniform_int(20));
    for (int i = 0; i < num_edges; ++i) {
        const int size = 2 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_size - 1)));
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

TEST_CASE("property: read(write(h)) == h on canonical hypergraphs") {
    Rng rng(12345);
    for (int rep = 0; rep < 100; ++rep) {
        Hypergraph h = random_hypergraph(rng);
        Hypergraph back = read_hypergraph(write_hypergraph(h));
        CHECK(back.num_vertices == h.num_vertices);
        CHECK(back.edges == h.edges);
    }
}

TEST_CASE("property: verify_proper invariant under color permutation") {
    Rng rng(777);
    for (int rep = 0; rep < 50; ++rep) {
        Hypergraph h = random_hypergraph(rng);
        Coloring c;
        c.k = 2;
        for (int v = 0; v < h.num_vertices; ++v)
            c.colors.push_back(static_cast<int>(rng.uniform_int(2)));
        Coloring swapped = c;
        for (int& col : swapped.colors) col = 1 - col;
        auto v1 = verify_proper(h, c);
        auto v2 = verify_proper(h, swapped);
        CHECK(v1.proper == v2.proper);
        CHECK(v1.monochromatic_edges == v2.monochromatic_edges);
    }
}
