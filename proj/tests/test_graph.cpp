#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "sga/graph.hpp"

using namespace sga;

namespace {

Graph path(std::uint32_t n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph complete(std::uint32_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

} // namespace

TEST_CASE("vertex set basics") {
    VertexSet s(130); // forces a third word
    CHECK(s.universe() == 130);
    CHECK(s.empty());
    CHECK(s.count() == 0);
    s.add(0);
    s.add(64);
    s.add(129);
    CHECK(s.count() == 3);
    CHECK(s.contains(64));
    CHECK_FALSE(s.contains(63));
    CHECK_FALSE(s.empty());
    CHECK(s.to_vector() == std::vector<Vertex>{0, 64, 129});
    s.remove(64);
    CHECK(s.count() == 2);
    CHECK_FALSE(s.contains(64));

    CHECK(VertexSet::of(130, {0, 129}) == s);
    CHECK(VertexSet::full(5).count() == 5);
    CHECK(VertexSet::full(5).to_vector() == std::vector<Vertex>{0, 1, 2, 3, 4});
}

TEST_CASE("vertex set algebra") {
    const VertexSet a = VertexSet::of(70, {1, 5, 68});
    const VertexSet b = VertexSet::of(70, {5, 6, 68});
    VertexSet conj = a;
    conj &= b;
    CHECK(conj.to_vector() == std::vector<Vertex>{5, 68});
    VertexSet disj = a;
    disj |= b;
    CHECK(disj.to_vector() == std::vector<Vertex>{1, 5, 6, 68});

    const VertexSet comp = a.complement();
    CHECK(comp.count() == 70 - 3);
    CHECK_FALSE(comp.contains(5));
    CHECK(comp.contains(0));
    CHECK(comp.contains(69));
    // complement never leaks bits beyond the universe
    VertexSet round = comp.complement();
    CHECK(round == a);
}

TEST_CASE("graph construction and basic queries") {
    Graph g(5);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 0);
    g.add_edge(0, 3);
    g.add_edge(3, 1); // order of endpoints must not matter
    CHECK(g.has_edge(0, 3));
    CHECK(g.has_edge(3, 0));
    CHECK(g.has_edge(1, 3));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(3) == 2);
    CHECK(g.degree(4) == 0);
    CHECK(g.neighbors(3) == std::vector<Vertex>{0, 1});
    CHECK(g.neighbor_set(3) == VertexSet::of(5, {0, 1}));
    CHECK(g.edges() == std::vector<std::pair<Vertex, Vertex>>{{0, 3}, {1, 3}});
    CHECK(g.degree_sequence_sorted() == std::vector<std::uint32_t>{2, 1, 1, 0, 0});
    CHECK(g.check_invariants());
}

TEST_CASE("graph rejects degenerate constructions") {
    CHECK_THROWS_AS(Graph(0), std::invalid_argument);
    CHECK_THROWS_AS(Graph(kMaxVertices + 1), std::invalid_argument);
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
}

TEST_CASE("relabeled follows its stated convention") {
    const Graph g = sample_gnp(12, 0.5, 2);
    // perm as documented: result.has_edge(a,b) == g.has_edge(perm[a], perm[b])
    const std::vector<Vertex> perm = {7, 3, 11, 0, 9, 1, 10, 4, 2, 8, 6, 5};
    const Graph h = g.relabeled(perm);
    for (Vertex a = 0; a < 12; ++a)
        for (Vertex b = 0; b < 12; ++b)
            if (a != b) CHECK(h.has_edge(a, b) == g.has_edge(perm[a], perm[b]));
    CHECK(h.edge_count() == g.edge_count());
    CHECK(h.check_invariants());

    // applying the inverse permutation restores the original graph
    std::vector<Vertex> inv(12);
    for (Vertex a = 0; a < 12; ++a) inv[perm[a]] = a;
    CHECK(h.relabeled(inv) == g);
}

TEST_CASE("gnp sampling is a pure function of (n, p, seed)") {
    const Graph a = sample_gnp(64, 0.5, 1);
    const Graph b = sample_gnp(64, 0.5, 1);
    CHECK(a == b);
    CHECK(a != sample_gnp(64, 0.5, 2));

    // frozen draw: any change to the pair->counter mapping shows up here
    CHECK(a.edge_count() == 1024);
    CHECK(a.degree(0) == 28);
    CHECK(a.degree(63) == 32);
    CHECK(a.has_edge(0, 1));
    CHECK(a.has_edge(0, 5));
    CHECK_FALSE(a.has_edge(30, 31));
}

TEST_CASE("gnp endpoints and domain") {
    CHECK(sample_gnp(20, 0.0, 9).edge_count() == 0);
    CHECK(sample_gnp(20, 1.0, 9).edge_count() == 190);
    CHECK_THROWS_AS(sample_gnp(0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_gnp(5, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_gnp(5, 1.1, 1), std::invalid_argument);
}

TEST_CASE("from_edge_list uses 1-based labels") {
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> edges = {{1, 2}, {2, 4}, {2, 4}};
    const Graph g = from_edge_list(4, edges); // duplicate collapses
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 3));
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> loop = {{2, 2}};
    CHECK_THROWS_AS(from_edge_list(4, loop), std::invalid_argument);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> range = {{1, 5}};
    CHECK_THROWS_AS(from_edge_list(4, range), std::invalid_argument);
}

TEST_CASE("neighborhood extraction") {
    const Graph g = path(5);
    const RootedGraph nb = neighborhood(g, 2);
    CHECK(nb.ids == std::vector<Vertex>{1, 2, 3});
    CHECK(nb.ids[nb.root] == 2);
    CHECK(nb.graph.vertex_count() == 3);
    CHECK(nb.graph.edge_count() == 2);
    // the two path edges survive, the far pair does not
    CHECK(nb.graph.has_edge(0, 1));
    CHECK(nb.graph.has_edge(1, 2));
    CHECK_FALSE(nb.graph.has_edge(0, 2));

    const RootedGraph wide = neighborhood(g, 0, 2);
    CHECK(wide.ids == std::vector<Vertex>{0, 1, 2});

    const RootedGraph lone = neighborhood(Graph(3), 1);
    CHECK(lone.graph.vertex_count() == 1);
    CHECK(lone.root == 0);

    CHECK_THROWS_AS(neighborhood(g, 5), std::invalid_argument);
    CHECK_THROWS_AS(neighborhood(g, 0, 0), std::invalid_argument);
}

TEST_CASE("common neighbors") {
    Graph g = complete(4);
    // common neighbours of {0,1} in K4 are exactly {2,3}
    CHECK(common_neighbors(g, VertexSet::of(4, {0, 1})) == VertexSet::of(4, {2, 3}));
    // the queried set itself is excluded even when adjacent
    CHECK_FALSE(common_neighbors(g, VertexSet::of(4, {0})).contains(0));
    CHECK_THROWS_AS(common_neighbors(g, VertexSet(4)), std::invalid_argument);
    CHECK_THROWS_AS(common_neighbors(g, VertexSet::of(5, {0})), std::invalid_argument);
}

TEST_CASE("cut and induced edge counts match a naive scan") {
    const Graph g = sample_gnp(40, 0.3, 9);
    const VertexSet j = VertexSet::of(40, {0, 3, 4, 9, 17, 21, 22, 30, 39});
    std::uint64_t cut = 0, inside = 0;
    for (Vertex u = 0; u < 40; ++u)
        for (Vertex v = u + 1; v < 40; ++v) {
            if (!g.has_edge(u, v)) continue;
            const int ends = int(j.contains(u)) + int(j.contains(v));
            if (ends == 1) ++cut;
            if (ends == 2) ++inside;
        }
    CHECK(edges_between(g, j) == cut);
    CHECK(edges_within(g, j) == inside);
    CHECK(edges_between(g, VertexSet(40)) == 0);
    CHECK(edges_within(g, VertexSet::full(40)) == g.edge_count());
    CHECK_THROWS_AS(edges_between(g, VertexSet(39)), std::invalid_argument);
}

TEST_CASE("edge list text round-trips") {
    const Graph g = sample_gnp(20, 0.3, 4);
    CHECK(parse_edge_list_text(to_edge_list_text(g)) == g);

    const Graph parsed = parse_edge_list_text("# comment\n\n3 2\n1 2\n# middle\n2 3\n");
    CHECK(parsed.vertex_count() == 3);
    CHECK(parsed.has_edge(0, 1));
    CHECK(parsed.has_edge(1, 2));
    CHECK_FALSE(parsed.has_edge(0, 2));
}

TEST_CASE("edge list parser reports malformed input") {
    CHECK_THROWS_AS(parse_edge_list_text(""), std::runtime_error);             // no header
    CHECK_THROWS_AS(parse_edge_list_text("3 2\n1 2\n"), std::runtime_error);   // count short
    CHECK_THROWS_AS(parse_edge_list_text("3 1\n1 2\n2 3\n"), std::runtime_error); // count long
    CHECK_THROWS_AS(parse_edge_list_text("3 1\n1 2 7\n"), std::runtime_error); // trailing token
    CHECK_THROWS_AS(parse_edge_list_text("3 1\n1 x\n"), std::runtime_error);   // not an integer
    CHECK_THROWS_AS(parse_edge_list_text("3 1\n2 2\n"), std::runtime_error);   // loop
    CHECK_THROWS_AS(parse_edge_list_text("3 1\n1 4\n"), std::runtime_error);   // out of range
    CHECK_THROWS_AS(parse_edge_list_text("0 0\n"), std::runtime_error);        // empty graph
}
