#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sga/canon.hpp"
#include "sga/graph.hpp"

namespace sga {

// A card is the rooted canonical code of a closed 1-neighbourhood: the
// center, its neighbours, and every host edge among them, rooted at the
// center. Cards carry no host identities; CanonicalCode::to_graph() rebuilds
// the card's shape with the root at position 0.
using Card = CanonicalCode;

Card extract_card(const Graph& g, Vertex center);

enum class DeckMode : std::uint8_t {
    // Unordered multiset of cards, stored sorted ascending by code bytes.
    Unlabeled,
    // cards[i] is the card of center i; order is meaningful.
    RootedLabeled,
};

struct Deck {
    DeckMode mode = DeckMode::Unlabeled;
    std::uint32_t host_vertex_count = 0;
    std::vector<Card> cards; // always exactly host_vertex_count entries

    friend bool operator==(const Deck&, const Deck&) = default;
};

Deck extract_deck(const Graph& g, DeckMode mode);

// Witness for unequal decks. For rooted-labeled decks `center` is the first
// index whose cards differ; for unlabeled decks `code` is the smallest code
// whose multiplicities differ, with the per-deck counts. A bare size or
// vertex-count mismatch reports counts only.
struct DeckDifference {
    std::optional<Vertex> center;
    std::optional<Card> code;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
};

// Pre: same mode (throws std::invalid_argument otherwise).
bool decks_equal(const Deck& a, const Deck& b);
std::optional<DeckDifference> deck_difference(const Deck& a, const Deck& b);

// Whether the n rooted cards of g are pairwise distinct, so an unlabeled
// deck of g still pins down which center produced each card. If not,
// `collision` is the lexicographically smallest pair of centers sharing a
// card.
struct CenterIdentifiability {
    bool identifiable = true;
    std::optional<std::pair<Vertex, Vertex>> collision;
};

CenterIdentifiability center_identifiable(const Graph& g);

// Text format: optional '#' comment / blank lines, then a header line
// "<host_vertex_count> <unlabeled|rooted_labeled>", then exactly one
// lowercase-hex card code per card line. Unlabeled decks are re-normalized
// (sorted) on parse.
std::string to_deck_text(const Deck& deck);
Deck parse_deck_text(const std::string& text);
void write_deck(const std::filesystem::path& path, const Deck& deck);
Deck read_deck(const std::filesystem::path& path);

} // namespace sga
