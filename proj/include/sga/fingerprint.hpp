#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sga/canon.hpp"
#include "sga/deck.hpp"
#include "sga/graph.hpp"

namespace sga {

enum class Adjacency : std::uint8_t { Adjacent, NonAdjacent, Undecided };

struct AdjacencyVerdict {
    Vertex v = 0, w = 0; // v < w
    Adjacency verdict = Adjacency::Undecided;
    // The fingerprint code the adjacent verdict rests on.
    std::optional<CanonicalCode> evidence;
};

// The fingerprint of a non-root vertex x on a rooted card: the canonical
// code of the induced subgraph on the common neighbours of the root and x
// inside the card. If v and w are adjacent in the host graph, the subgraph
// induced on their common neighbours is visible from both sides, so its code
// appears among the fingerprints of card v and of card w.
std::vector<CanonicalCode> card_fingerprints(const Card& card);

// Deck-only adjacency classification of {i, j}:
//   - either card has no non-root vertices            -> non-adjacent
//   - exactly one code shared between the two cards'
//     fingerprint multisets, on a nonempty vertex set -> adjacent
//   - no shared code                                  -> non-adjacent
//   - otherwise (several shared codes, or only the
//     empty-set code is shared)                       -> undecided
// Never consults the host graph. Pre: rooted-labeled deck, i != j, both in
// range (throws std::invalid_argument otherwise).
AdjacencyVerdict fingerprint_classify(const Deck& rooted_deck, Vertex i, Vertex j);

// All C(n,2) verdicts, (v,w) in row-major order; fingerprints are computed
// once per card.
std::vector<AdjacencyVerdict> classify_all_pairs(const Deck& rooted_deck);

} // namespace sga
