#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sga {

using Vertex = std::uint32_t;

// Maximum supported vertex count. Bitset rows make the adjacency matrix
// n*ceil(n/64) words, which stays manageable up to this cap; parameter sweeps
// never need more.
inline constexpr std::uint32_t kMaxVertices = 1u << 20;

// Set of vertices out of [0, n), stored as a bitmask.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::uint32_t universe() const { return n_; }
    bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
    void add(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void remove(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    std::uint32_t count() const;
    bool empty() const;

    // Members in increasing order.
    std::vector<Vertex> to_vector() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    VertexSet& operator&=(const VertexSet& o);
    VertexSet& operator|=(const VertexSet& o);
    // Complement within the universe [0, n).
    VertexSet complement() const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    static VertexSet full(std::uint32_t n);
    static VertexSet of(std::uint32_t n, std::initializer_list<Vertex> vs);
    static VertexSet of(std::uint32_t n, std::span<const Vertex> vs);

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Simple undirected graph on vertices 0..n-1 (0-based everywhere inside the
// library; file formats and reports use 1-based labels, converted at the
// boundary). Adjacency is one bitset row per vertex. Graphs are immutable
// after construction apart from the builder-style add_edge, and all queries
// are const, so sharing across threads is safe.
class Graph {
public:
    explicit Graph(std::uint32_t n);

    std::uint32_t vertex_count() const { return n_; }
    std::uint32_t words_per_row() const { return words_; }

    bool has_edge(Vertex u, Vertex v) const {
        return (bits_[std::size_t{u} * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }
    void add_edge(Vertex u, Vertex v);

    std::span<const std::uint64_t> row(Vertex v) const {
        return {bits_.data() + std::size_t{v} * words_, words_};
    }

    std::uint32_t degree(Vertex v) const;
    std::uint64_t edge_count() const;
    std::vector<Vertex> neighbors(Vertex v) const;
    VertexSet neighbor_set(Vertex v) const;

    // Unordered edges {u,v}, u < v, in row-major order.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    std::vector<std::uint32_t> degree_sequence_sorted() const; // descending

    // Relabeled copy: vertex v of the result is perm[v] of *this... inverse
    // convention matters, so spell it out: result.has_edge(a,b) ==
    // this->has_edge(perm[a], perm[b]).
    Graph relabeled(std::span<const Vertex> perm) const;

    // Checks the structural invariants (adjacency symmetry, no loops) by
    // direct scan. Constructors maintain them; this is for tests/debugging.
    bool check_invariants() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::uint32_t n_;
    std::uint32_t words_;
    std::vector<std::uint64_t> bits_;
};

// G(n,p): each unordered pair {u,v} is an edge independently with probability
// p. Pair {u,v} (u<v) consumes the counter at its row-major index, so the
// sample is a pure function of (n, p, seed) regardless of evaluation order.
// Throws std::invalid_argument for n = 0 or p outside [0,1].
Graph sample_gnp(std::uint32_t n, double p, std::uint64_t seed);

// Graph with exactly the given edges (1-based endpoints, duplicates
// collapsed). Throws std::invalid_argument on out-of-range endpoints or
// loops.
Graph from_edge_list(std::uint32_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges_1based);

// Rooted induced subgraph with its embedding into the host graph.
// Vertices are re-indexed 0..k-1; ids[local] gives the host vertex.
struct RootedGraph {
    Graph graph;
    Vertex root;                 // local index
    std::vector<Vertex> ids;     // local -> host vertex, increasing
};

// Induced subgraph on the vertices at distance <= r from v, rooted at v.
// Host identities are preserved in ids. r >= 1; only r = 1 is exercised by
// the experiment suite.
RootedGraph neighborhood(const Graph& g, Vertex v, std::uint32_t r = 1);

// Vertices adjacent to every member of s, excluding s itself.
VertexSet common_neighbors(const Graph& g, const VertexSet& s);

// |E(G_{J,J^c})|: edges with exactly one endpoint in j.
std::uint64_t edges_between(const Graph& g, const VertexSet& j);

// Number of edges of the induced subgraph G_J.
std::uint64_t edges_within(const Graph& g, const VertexSet& j);

// --- edge-list text format -------------------------------------------------
// First line "n m", then m lines "u v" with 1 <= u < v <= n. Lines starting
// with '#' are comments. Legacy of many graph tools; kept deliberately dumb.

std::string to_edge_list_text(const Graph& g);
void write_edge_list(const Graph& g, const std::string& path);

// Throws std::runtime_error with a line-numbered message on malformed input.
Graph parse_edge_list_text(const std::string& text);
Graph read_edge_list(const std::string& path);

} // namespace sga
