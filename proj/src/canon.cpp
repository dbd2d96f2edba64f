#include "sga/canon.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace sga {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::size_t code_size_bytes(std::uint32_t n) {
    std::size_t pair_bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    return 4 + (pair_bits + 7) / 8;
}

// Ordered partition of the vertex set. Cells are kept in discovery order;
// vertices inside a cell stay sorted ascending so candidate exploration is
// deterministic.
using Cells = std::vector<std::vector<Vertex>>;

class CanonSearch {
public:
    CanonSearch(const Graph& g, std::optional<Vertex> root) : g_(g), n_(g.vertex_count()) {
        Cells cells;
        if (root) {
            std::vector<Vertex> rest;
            rest.reserve(n_ - 1);
            for (Vertex v = 0; v < n_; ++v)
                if (v != *root) rest.push_back(v);
            cells.push_back({*root});
            if (!rest.empty()) cells.push_back(std::move(rest));
        } else {
            std::vector<Vertex> all(n_);
            for (Vertex v = 0; v < n_; ++v) all[v] = v;
            cells.push_back(std::move(all));
        }
        refine(cells);
        path_.clear();
        descend(cells);
    }

    CanonicalForm take_result() {
        CanonicalForm form;
        form.order = std::move(best_order_);
        form.code.bytes = std::move(best_bytes_);
        return form;
    }

private:
    // Equitable refinement: split every cell by the vector of neighbour
    // counts into all current cells, sub-cells ordered by that signature.
    // Signatures are label-invariant, so the refined partition is too (up to
    // the within-cell vertex order, which only steers exploration order).
    void refine(Cells& cells) const {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<VertexSet> masks;
            masks.reserve(cells.size());
            for (const auto& cell : cells) masks.push_back(VertexSet::of(n_, cell));

            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                if (cells[ci].size() <= 1) continue;
                std::vector<std::pair<std::vector<std::uint32_t>, Vertex>> keyed;
                keyed.reserve(cells[ci].size());
                for (Vertex v : cells[ci]) {
                    std::vector<std::uint32_t> sig;
                    sig.reserve(cells.size());
                    for (const auto& mask : masks) sig.push_back(count_neighbors_in(v, mask));
                    keyed.emplace_back(std::move(sig), v);
                }
                std::stable_sort(keyed.begin(), keyed.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                if (keyed.front().first == keyed.back().first) continue;

                Cells split;
                for (std::size_t k = 0; k < keyed.size(); ++k) {
                    if (k == 0 || keyed[k].first != keyed[k - 1].first) split.emplace_back();
                    split.back().push_back(keyed[k].second);
                }
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(ci));
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(ci),
                             std::make_move_iterator(split.begin()),
                             std::make_move_iterator(split.end()));
                changed = true;
                break; // masks are stale after a split; restart the pass
            }
        }
    }

    std::uint32_t count_neighbors_in(Vertex v, const VertexSet& mask) const {
        const std::uint64_t* row = g_.row(v).data();
        const std::uint64_t* m = mask.words().data();
        std::uint32_t total = 0;
        for (std::size_t w = 0; w < mask.words().size(); ++w)
            total += static_cast<std::uint32_t>(std::popcount(row[w] & m[w]));
        return total;
    }

    void descend(Cells& cells) {
        std::size_t target = cells.size();
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            if (cells[ci].size() > 1) {
                target = ci;
                break;
            }
        }
        if (target == cells.size()) {
            visit_leaf(cells);
            return;
        }

        std::vector<Vertex> explored;
        for (Vertex v : cells[target]) {
            if (covered_by_explored(v, explored)) continue;
            explored.push_back(v);

            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t ci = 0; ci < target; ++ci) child.push_back(cells[ci]);
            child.push_back({v});
            {
                std::vector<Vertex> rest;
                rest.reserve(cells[target].size() - 1);
                for (Vertex u : cells[target])
                    if (u != v) rest.push_back(u);
                child.push_back(std::move(rest));
            }
            for (std::size_t ci = target + 1; ci < cells.size(); ++ci) child.push_back(cells[ci]);

            refine(child);
            path_.push_back(v);
            descend(child);
            path_.pop_back();
        }
    }

    // Sibling pruning: v is redundant if some automorphism that fixes every
    // vertex individualized on the current path maps it into an already
    // explored candidate. Restricting to path-fixing generators keeps the
    // pruned subtree exactly isomorphic to an explored one (same prefix), so
    // neither the minimal leaf code nor its realizability is lost. Pruning
    // with the full group would not be safe here.
    bool covered_by_explored(Vertex v, const std::vector<Vertex>& explored) const {
        if (explored.empty()) return false;
        std::vector<const std::vector<Vertex>*> fixing;
        for (const auto& gen : generators_) {
            bool fixes = true;
            for (Vertex p : path_) {
                if (gen[p] != p) {
                    fixes = false;
                    break;
                }
            }
            if (fixes) fixing.push_back(&gen);
        }
        if (fixing.empty()) return false;

        std::vector<Vertex> orbit{v};
        std::vector<bool> in_orbit(n_, false);
        in_orbit[v] = true;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            Vertex u = orbit[head];
            for (const auto* gen : fixing) {
                Vertex w = (*gen)[u];
                if (!in_orbit[w]) {
                    in_orbit[w] = true;
                    orbit.push_back(w);
                }
            }
        }
        for (Vertex e : explored)
            if (in_orbit[e]) return true;
        return false;
    }

    void visit_leaf(const Cells& cells) {
        std::vector<Vertex> order;
        order.reserve(n_);
        for (const auto& cell : cells) order.push_back(cell.front());

        std::vector<std::uint8_t> bytes(code_size_bytes(n_), 0);
        bytes[0] = static_cast<std::uint8_t>(n_ >> 24);
        bytes[1] = static_cast<std::uint8_t>(n_ >> 16);
        bytes[2] = static_cast<std::uint8_t>(n_ >> 8);
        bytes[3] = static_cast<std::uint8_t>(n_);
        std::size_t bit = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            for (std::uint32_t j = i + 1; j < n_; ++j, ++bit) {
                if (g_.has_edge(order[i], order[j]))
                    bytes[4 + (bit >> 3)] |= static_cast<std::uint8_t>(0x80u >> (bit & 7));
            }
        }

        if (!have_best_) {
            best_bytes_ = std::move(bytes);
            best_order_ = std::move(order);
            have_best_ = true;
            return;
        }
        if (bytes < best_bytes_) {
            // The new minimum invalidates nothing: generators came from
            // explicit leaf pairs and stay valid automorphisms.
            best_bytes_ = std::move(bytes);
            best_order_ = std::move(order);
            return;
        }
        if (bytes == best_bytes_) {
            // Equal codes certify an automorphism: map the earlier order
            // onto this one position by position.
            std::vector<Vertex> gen(n_);
            for (std::uint32_t pos = 0; pos < n_; ++pos) gen[order[pos]] = best_order_[pos];
            bool identity = true;
            for (Vertex v = 0; v < n_; ++v)
                if (gen[v] != v) {
                    identity = false;
                    break;
                }
            if (!identity) generators_.push_back(std::move(gen));
        }
    }

    const Graph& g_;
    std::uint32_t n_;
    std::vector<Vertex> path_;
    std::vector<std::vector<Vertex>> generators_;
    std::vector<std::uint8_t> best_bytes_;
    std::vector<Vertex> best_order_;
    bool have_best_ = false;
};

} // namespace

std::uint32_t CanonicalCode::vertex_count() const {
    if (bytes.size() < 4) throw std::invalid_argument("canonical code shorter than its header");
    return (static_cast<std::uint32_t>(bytes[0]) << 24) |
           (static_cast<std::uint32_t>(bytes[1]) << 16) |
           (static_cast<std::uint32_t>(bytes[2]) << 8) | static_cast<std::uint32_t>(bytes[3]);
}

Graph CanonicalCode::to_graph() const {
    std::uint32_t n = vertex_count();
    if (bytes.size() != code_size_bytes(n))
        throw std::invalid_argument("canonical code length does not match its vertex count");
    Graph g(n);
    std::size_t bit = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j, ++bit) {
            if (bytes[4 + (bit >> 3)] & (0x80u >> (bit & 7))) g.add_edge(i, j);
        }
    }
    return g;
}

std::string CanonicalCode::hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

CanonicalCode CanonicalCode::from_hex(const std::string& h) {
    if (h.size() % 2 != 0) throw std::invalid_argument("hex code has odd length");
    CanonicalCode code;
    code.bytes.reserve(h.size() / 2);
    for (std::size_t i = 0; i < h.size(); i += 2) {
        int hi = hex_digit(h[i]);
        int lo = hex_digit(h[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("hex code contains a non-hex character");
        code.bytes.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    // Round-trip validation: header and length must agree.
    std::uint32_t n = code.vertex_count();
    if (code.bytes.size() != code_size_bytes(n))
        throw std::invalid_argument("hex code length does not match its vertex count");
    return code;
}

CanonicalForm canonical_form(const Graph& g, std::optional<Vertex> root) {
    std::uint32_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("canonical form of an empty graph is undefined");
    if (n > kCanonMaxVertices)
        throw std::invalid_argument("graph exceeds the canonical-search size limit");
    if (root && *root >= n) throw std::invalid_argument("root out of range");
    CanonSearch search(g, root);
    CanonicalForm form = search.take_result();
    assert(form.order.size() == n);
    assert(!root || form.order.front() == *root);
    return form;
}

CanonicalCode canonical_code(const Graph& g) { return canonical_form(g).code; }

CanonicalCode rooted_code(const Graph& g, Vertex root) {
    return canonical_form(g, root).code;
}

bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    if (a.degree_sequence_sorted() != b.degree_sequence_sorted()) return false;
    return canonical_code(a) == canonical_code(b);
}

std::optional<Vertex> VertexMapping::image_of(Vertex v) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), v,
                               [](const auto& pr, Vertex key) { return pr.first < key; });
    if (it == pairs.end() || it->first != v) return std::nullopt;
    return it->second;
}

std::optional<VertexMapping> find_fixed_point_isomorphism(const RootedGraph& a,
                                                          const RootedGraph& b) {
    if (a.ids.size() != a.graph.vertex_count() || b.ids.size() != b.graph.vertex_count())
        throw std::invalid_argument("rooted graph id table does not cover its vertices");
    if (a.graph.vertex_count() != b.graph.vertex_count()) return std::nullopt;

    CanonicalForm fa = canonical_form(a.graph, a.root);
    CanonicalForm fb = canonical_form(b.graph, b.root);
    if (fa.code != fb.code) return std::nullopt;

    // Composing "a -> canonical position -> b" yields a root-preserving
    // isomorphism because both orders realize the same rooted code.
    std::uint32_t n = a.graph.vertex_count();
    std::vector<Vertex> local(n);
    for (std::uint32_t pos = 0; pos < n; ++pos) local[fa.order[pos]] = fb.order[pos];

    // Verify before trusting: edge-preserving on every pair, root to root.
    if (local[a.root] != b.root)
        throw std::logic_error("rooted canonical order failed to pin the root");
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (a.graph.has_edge(u, v) != b.graph.has_edge(local[u], local[v]))
                throw std::logic_error("canonical composition produced a non-isomorphism");

    VertexMapping mapping;
    mapping.pairs.reserve(n);
    for (Vertex u = 0; u < n; ++u) mapping.pairs.emplace_back(a.ids[u], b.ids[local[u]]);
    std::sort(mapping.pairs.begin(), mapping.pairs.end());
    return mapping;
}

} // namespace sga
