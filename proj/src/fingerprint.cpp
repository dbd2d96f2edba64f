#include "sga/fingerprint.hpp"

#include <algorithm>
#include <stdexcept>

namespace sga {

namespace {

// Code of the zero-vertex graph: the four-byte count header with no
// adjacency payload. Sparse cards produce it often — an empty common
// neighbourhood carries no shape evidence, and classify_from treats a
// shared empty-set code as ambiguous rather than as a match.
CanonicalCode empty_set_code() { return CanonicalCode{{0, 0, 0, 0}}; }

// Induced subgraph on a sorted nonempty vertex subset.
Graph induced(const Graph& g, const std::vector<Vertex>& members) {
    Graph out(static_cast<std::uint32_t>(members.size()));
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (g.has_edge(members[a], members[b]))
                out.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
        }
    }
    return out;
}

// Distinct codes present in both sorted multisets.
std::vector<CanonicalCode> shared_codes(const std::vector<CanonicalCode>& a,
                                        const std::vector<CanonicalCode>& b) {
    std::vector<CanonicalCode> out;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] < b[ib]) ++ia;
        else if (b[ib] < a[ia]) ++ib;
        else {
            if (out.empty() || out.back() != a[ia]) out.push_back(a[ia]);
            ++ia;
            ++ib;
        }
    }
    return out;
}

AdjacencyVerdict classify_from(const std::vector<CanonicalCode>& fi,
                               const std::vector<CanonicalCode>& fj, Vertex v, Vertex w) {
    AdjacencyVerdict verdict;
    verdict.v = v;
    verdict.w = w;
    if (fi.empty() || fj.empty()) { // a vertex with no neighbours is adjacent to nothing
        verdict.verdict = Adjacency::NonAdjacent;
        return verdict;
    }
    const auto shared = shared_codes(fi, fj);
    if (shared.empty()) {
        // were v and w adjacent, their common-neighbourhood code would
        // appear on both sides
        verdict.verdict = Adjacency::NonAdjacent;
    } else if (shared.size() == 1 && shared.front().vertex_count() > 0) {
        verdict.verdict = Adjacency::Adjacent;
        verdict.evidence = shared.front();
    } else {
        verdict.verdict = Adjacency::Undecided;
    }
    return verdict;
}

} // namespace

std::vector<CanonicalCode> card_fingerprints(const Card& card) {
    const Graph g = card.to_graph();
    // rooted codes place the root at canonical position 0
    constexpr Vertex root = 0;
    std::vector<CanonicalCode> out;
    const std::uint32_t k = g.vertex_count();
    out.reserve(k > 0 ? k - 1 : 0);
    for (Vertex x = 1; x < k; ++x) {
        std::vector<Vertex> common;
        for (Vertex u : g.neighbors(root)) {
            if (u != x && g.has_edge(x, u)) common.push_back(u);
        }
        out.push_back(common.empty() ? empty_set_code() : canonical_code(induced(g, common)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

AdjacencyVerdict fingerprint_classify(const Deck& rooted_deck, Vertex i, Vertex j) {
    if (rooted_deck.mode != DeckMode::RootedLabeled)
        throw std::invalid_argument("fingerprint: deck must be rooted-labeled");
    const std::uint32_t n = rooted_deck.host_vertex_count;
    if (i >= n || j >= n || i == j)
        throw std::invalid_argument("fingerprint: need two distinct vertices in range");
    const Vertex v = std::min(i, j);
    const Vertex w = std::max(i, j);
    return classify_from(card_fingerprints(rooted_deck.cards[v]),
                         card_fingerprints(rooted_deck.cards[w]), v, w);
}

std::vector<AdjacencyVerdict> classify_all_pairs(const Deck& rooted_deck) {
    if (rooted_deck.mode != DeckMode::RootedLabeled)
        throw std::invalid_argument("fingerprint: deck must be rooted-labeled");
    const std::uint32_t n = rooted_deck.host_vertex_count;
    std::vector<std::vector<CanonicalCode>> prints;
    prints.reserve(n);
    for (const auto& card : rooted_deck.cards) prints.push_back(card_fingerprints(card));
    std::vector<AdjacencyVerdict> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w = v + 1; w < n; ++w) out.push_back(classify_from(prints[v], prints[w], v, w));
    }
    return out;
}

} // namespace sga
