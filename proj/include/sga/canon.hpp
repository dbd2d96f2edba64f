#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sga/graph.hpp"

namespace sga {

// Total-order-comparable certificate identifying a graph up to isomorphism
// (rooted variant: up to root-preserving isomorphism). Layout: 4 bytes
// big-endian vertex count, then the upper-triangular adjacency bits of the
// canonical relabeling in row-major order, MSB-first, zero-padded — stable
// across versions so codes can be frozen in golden tests and deck files.
struct CanonicalCode {
    std::vector<std::uint8_t> bytes;

    auto operator<=>(const CanonicalCode&) const = default;

    std::uint32_t vertex_count() const;
    // Rebuilds the canonical representative the code describes.
    Graph to_graph() const;

    std::string hex() const; // lowercase
    static CanonicalCode from_hex(const std::string& h);
};

// Canonical certificate plus the vertex order realizing it:
// order[position] = original vertex, i.e. code bit (i,j) is
// g.has_edge(order[i], order[j]).
struct CanonicalForm {
    CanonicalCode code;
    std::vector<Vertex> order;
};

// Upper bound accepted by the canonical search. Refinement-friendly inputs
// (random graphs, neighbourhood cards) stay fast far beyond the sizes the
// experiments use; highly regular graphs can in principle force exponential
// backtracking, which is out of scope here.
inline constexpr std::uint32_t kCanonMaxVertices = 4096;

// Canonical labeling by iterated color refinement with backtracking over the
// first non-singleton cell. With a root, refinement is seeded with the root
// in a distinguished (first) color class, so the root is always position 0
// of the canonical order. Throws std::invalid_argument beyond
// kCanonMaxVertices or for an out-of-range root.
CanonicalForm canonical_form(const Graph& g, std::optional<Vertex> root = std::nullopt);

CanonicalCode canonical_code(const Graph& g);
CanonicalCode rooted_code(const Graph& g, Vertex root);

bool are_isomorphic(const Graph& a, const Graph& b);

// Injective vertex mapping presented as (source, image) pairs sorted by
// source. Sources/images are host-graph labels (0-based).
struct VertexMapping {
    std::vector<std::pair<Vertex, Vertex>> pairs;

    std::optional<Vertex> image_of(Vertex v) const;
    friend bool operator==(const VertexMapping&, const VertexMapping&) = default;
};

// Root-preserving isomorphism between two rooted induced subgraphs, or
// nullopt if none exists. The witness is routed through the rooted canonical
// forms (deterministic); it is verified edge-preserving and root-fixing
// before being returned. Host labels of the two roots do not need to agree:
// the contract is root -> root.
std::optional<VertexMapping> find_fixed_point_isomorphism(const RootedGraph& a,
                                                          const RootedGraph& b);

} // namespace sga
