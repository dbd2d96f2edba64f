#include "sga/deck.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sga {

namespace {

const char* mode_word(DeckMode mode) {
    return mode == DeckMode::Unlabeled ? "unlabeled" : "rooted_labeled";
}

std::optional<DeckMode> mode_from_word(const std::string& word) {
    if (word == "unlabeled") return DeckMode::Unlabeled;
    if (word == "rooted_labeled") return DeckMode::RootedLabeled;
    return std::nullopt;
}

} // namespace

Card extract_card(const Graph& g, Vertex center) {
    RootedGraph nb = neighborhood(g, center);
    return rooted_code(nb.graph, nb.root);
}

Deck extract_deck(const Graph& g, DeckMode mode) {
    Deck deck;
    deck.mode = mode;
    deck.host_vertex_count = g.vertex_count();
    deck.cards.reserve(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) deck.cards.push_back(extract_card(g, v));
    if (mode == DeckMode::Unlabeled) std::sort(deck.cards.begin(), deck.cards.end());
    return deck;
}

bool decks_equal(const Deck& a, const Deck& b) { return !deck_difference(a, b).has_value(); }

std::optional<DeckDifference> deck_difference(const Deck& a, const Deck& b) {
    if (a.mode != b.mode)
        throw std::invalid_argument("decks of different modes are not comparable");
    if (a.host_vertex_count != b.host_vertex_count || a.cards.size() != b.cards.size()) {
        DeckDifference diff;
        diff.count_a = a.cards.size();
        diff.count_b = b.cards.size();
        return diff;
    }
    if (a.mode == DeckMode::RootedLabeled) {
        for (std::size_t i = 0; i < a.cards.size(); ++i) {
            if (a.cards[i] != b.cards[i]) {
                DeckDifference diff;
                diff.center = static_cast<Vertex>(i);
                diff.code = a.cards[i];
                diff.count_a = 1;
                diff.count_b = 0;
                return diff;
            }
        }
        return std::nullopt;
    }
    // Unlabeled: both card lists are sorted, so the first divergence found by
    // a multiplicity walk is the smallest code whose counts differ.
    std::size_t i = 0, j = 0;
    while (i < a.cards.size() || j < b.cards.size()) {
        const Card* next = nullptr;
        if (i < a.cards.size() && (j == b.cards.size() || a.cards[i] <= b.cards[j]))
            next = &a.cards[i];
        else
            next = &b.cards[j];
        Card code = *next;
        std::size_t ca = 0, cb = 0;
        while (i < a.cards.size() && a.cards[i] == code) ++i, ++ca;
        while (j < b.cards.size() && b.cards[j] == code) ++j, ++cb;
        if (ca != cb) {
            DeckDifference diff;
            diff.code = std::move(code);
            diff.count_a = ca;
            diff.count_b = cb;
            return diff;
        }
    }
    return std::nullopt;
}

CenterIdentifiability center_identifiable(const Graph& g) {
    std::map<Card, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < g.vertex_count(); ++v) groups[extract_card(g, v)].push_back(v);

    CenterIdentifiability result;
    for (const auto& [code, centers] : groups) {
        if (centers.size() < 2) continue;
        // Centers are inserted in ascending order, so (first, second) is the
        // smallest pair inside this group.
        std::pair<Vertex, Vertex> candidate{centers[0], centers[1]};
        if (!result.collision || candidate < *result.collision) result.collision = candidate;
    }
    result.identifiable = !result.collision.has_value();
    return result;
}

std::string to_deck_text(const Deck& deck) {
    std::ostringstream out;
    out << deck.host_vertex_count << ' ' << mode_word(deck.mode) << '\n';
    for (const Card& card : deck.cards) out << card.hex() << '\n';
    return out.str();
}

Deck parse_deck_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    Deck deck;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string mode_token;
            long long n = -1;
            if (!(fields >> n >> mode_token) || n < 0)
                throw std::invalid_argument("deck line " + std::to_string(line_no) +
                                            ": expected \"<vertex_count> <mode>\" header");
            auto mode = mode_from_word(mode_token);
            if (!mode)
                throw std::invalid_argument("deck line " + std::to_string(line_no) +
                                            ": unknown deck mode \"" + mode_token + "\"");
            std::string extra;
            if (fields >> extra)
                throw std::invalid_argument("deck line " + std::to_string(line_no) +
                                            ": trailing content after header");
            deck.host_vertex_count = static_cast<std::uint32_t>(n);
            deck.mode = *mode;
            have_header = true;
            continue;
        }
        std::string hex;
        fields >> hex;
        std::string extra;
        if (fields >> extra)
            throw std::invalid_argument("deck line " + std::to_string(line_no) +
                                        ": trailing content after card code");
        try {
            deck.cards.push_back(Card::from_hex(hex));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("deck line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw std::invalid_argument("deck text has no header line");
    if (deck.cards.size() != deck.host_vertex_count)
        throw std::invalid_argument("deck has " + std::to_string(deck.cards.size()) +
                                    " cards but the header promises " +
                                    std::to_string(deck.host_vertex_count));
    if (deck.mode == DeckMode::Unlabeled) std::sort(deck.cards.begin(), deck.cards.end());
    return deck;
}

void write_deck(const std::filesystem::path& path, const Deck& deck) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << to_deck_text(deck);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Deck read_deck(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_deck_text(buffer.str());
}

} // namespace sga
