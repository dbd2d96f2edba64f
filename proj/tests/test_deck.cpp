#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "sga/deck.hpp"
#include "sga/graph.hpp"

using namespace sga;

namespace {

Graph complete(std::uint32_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph path(std::uint32_t n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph star(std::uint32_t n) {
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

std::filesystem::path data_file(const char* name) {
    return std::filesystem::path(TEST_DATA_DIR) / name;
}

// Independent re-derivation of center identifiability: all cards pairwise
// distinct, first colliding pair in lexicographic order otherwise.
std::optional<std::pair<Vertex, Vertex>> naive_collision(const Graph& g) {
    for (Vertex a = 0; a < g.vertex_count(); ++a)
        for (Vertex b = a + 1; b < g.vertex_count(); ++b)
            if (extract_card(g, a) == extract_card(g, b)) return std::make_pair(a, b);
    return std::nullopt;
}

} // namespace

TEST_CASE("cards of hand-checked shapes") {
    // a star's centre card is the star itself, rooted at the hub
    const Graph s = star(5);
    CHECK(extract_card(s, 0).hex() == "00000005f000");
    CHECK(extract_card(s, 1).hex() == "0000000280"); // leaf sees one edge
    for (Vertex v = 2; v < 5; ++v) CHECK(extract_card(s, v) == extract_card(s, 1));

    // in a complete graph every card is the whole graph
    const Graph k = complete(3);
    CHECK(extract_card(k, 0) == extract_card(k, 1));
    CHECK(extract_card(k, 0).vertex_count() == 3);

    // an isolated vertex contributes the one-vertex card
    CHECK(extract_card(Graph(4), 2).hex() == "00000001");
}

TEST_CASE("deck extraction per mode") {
    const Graph s = star(5);
    const Deck rooted = extract_deck(s, DeckMode::RootedLabeled);
    CHECK(rooted.mode == DeckMode::RootedLabeled);
    CHECK(rooted.host_vertex_count == 5);
    REQUIRE(rooted.cards.size() == 5);
    for (Vertex v = 0; v < 5; ++v) CHECK(rooted.cards[v] == extract_card(s, v));

    const Deck unlabeled = extract_deck(s, DeckMode::Unlabeled);
    CHECK(std::is_sorted(unlabeled.cards.begin(), unlabeled.cards.end()));
    // four leaf cards then the hub card
    CHECK(unlabeled.cards[0].hex() == "0000000280");
    CHECK(unlabeled.cards[3].hex() == "0000000280");
    CHECK(unlabeled.cards[4].hex() == "00000005f000");
}

TEST_CASE("deck equality and difference witnesses") {
    const Graph g = sample_gnp(12, 0.4, 5);
    const std::vector<Vertex> perm = {5, 2, 9, 0, 11, 3, 7, 1, 10, 4, 8, 6};
    const Graph h = g.relabeled(perm);

    // relabeling never changes the unlabeled deck
    const Deck ug = extract_deck(g, DeckMode::Unlabeled);
    const Deck uh = extract_deck(h, DeckMode::Unlabeled);
    CHECK(decks_equal(ug, uh));
    CHECK_FALSE(deck_difference(ug, uh).has_value());

    // the rooted decks differ at the first centre whose card moved
    const Deck rg = extract_deck(g, DeckMode::RootedLabeled);
    const Deck rh = extract_deck(h, DeckMode::RootedLabeled);
    if (!decks_equal(rg, rh)) {
        const auto diff = deck_difference(rg, rh);
        REQUIRE(diff.has_value());
        REQUIRE(diff->center.has_value());
        CHECK(rg.cards[*diff->center] != rh.cards[*diff->center]);
        for (Vertex v = 0; v < *diff->center; ++v) CHECK(rg.cards[v] == rh.cards[v]);
    }

    // adding one edge raises the total edge count over all cards, so the
    // unlabeled decks must differ; the witness is the smallest disputed code
    Graph g2 = g;
    bool added = false;
    for (Vertex u = 0; u < 12 && !added; ++u)
        for (Vertex v = u + 1; v < 12 && !added; ++v)
            if (!g.has_edge(u, v)) {
                g2.add_edge(u, v);
                added = true;
            }
    REQUIRE(added);
    const Deck ug2 = extract_deck(g2, DeckMode::Unlabeled);
    REQUIRE_FALSE(decks_equal(ug, ug2));
    {
        const auto diff = deck_difference(ug, ug2);
        REQUIRE(diff.has_value());
        REQUIRE(diff->code.has_value());
        CHECK(diff->count_a != diff->count_b);
        const auto count = [&](const Deck& d, const Card& c) {
            return std::count(d.cards.begin(), d.cards.end(), c);
        };
        CHECK(count(ug, *diff->code) == static_cast<long>(diff->count_a));
        CHECK(count(ug2, *diff->code) == static_cast<long>(diff->count_b));
    }

    CHECK_THROWS_AS((void)decks_equal(ug, rg), std::invalid_argument);

    // size mismatch reports bare counts
    const Deck small = extract_deck(complete(3), DeckMode::Unlabeled);
    const auto diff = deck_difference(ug, small);
    REQUIRE(diff.has_value());
    CHECK_FALSE(diff->center.has_value());
    CHECK_FALSE(diff->code.has_value());
}

TEST_CASE("center identifiability matches the naive card scan") {
    const Graph cases[] = {path(4),
                           star(5),
                           complete(3),
                           sample_gnp(12, 0.5, 3),
                           sample_gnp(12, 0.2, 5),
                           read_edge_list(data_file("twins_a.txt").string())};
    for (const Graph& g : cases) {
        const auto expected = naive_collision(g);
        const CenterIdentifiability got = center_identifiable(g);
        CHECK(got.identifiable == !expected.has_value());
        CHECK(got.collision == expected);
    }
    // the path's two ends collide first
    const auto ends = center_identifiable(path(4));
    REQUIRE(ends.collision.has_value());
    CHECK(*ends.collision == std::pair<Vertex, Vertex>{0, 3});
}

TEST_CASE("deck text round-trips and renormalizes") {
    const Graph g = sample_gnp(9, 0.45, 8);
    for (const DeckMode mode : {DeckMode::Unlabeled, DeckMode::RootedLabeled}) {
        const Deck d = extract_deck(g, mode);
        CHECK(parse_deck_text(to_deck_text(d)) == d);
    }

    // unlabeled decks are sorted on parse even if the file is shuffled
    const Deck d = extract_deck(star(4), DeckMode::Unlabeled);
    std::string shuffled = "# deck of a 4-star\n4 unlabeled\n";
    shuffled += d.cards[3].hex() + "\n";
    shuffled += d.cards[0].hex() + "\n";
    shuffled += d.cards[2].hex() + "\n";
    shuffled += d.cards[1].hex() + "\n";
    CHECK(parse_deck_text(shuffled) == d);
}

TEST_CASE("deck parser rejects malformed input") {
    CHECK_THROWS_AS(parse_deck_text(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_deck_text("2 sideways\n0000000280\n0000000280\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_deck_text("2 unlabeled\n0000000280\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_deck_text("1 unlabeled\nzz\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_deck_text("1 unlabeled\n00000001 extra\n"), std::invalid_argument);
}

TEST_CASE("deck files round-trip on disk") {
    const Graph g = sample_gnp(8, 0.5, 14);
    const Deck d = extract_deck(g, DeckMode::RootedLabeled);
    const auto tmp = std::filesystem::temp_directory_path() / "sga_test_deck.txt";
    write_deck(tmp, d);
    CHECK(read_deck(tmp) == d);
    std::filesystem::remove(tmp);
    CHECK_THROWS_AS(read_deck(tmp), std::runtime_error);
}

TEST_CASE("the committed deck twins share both decks") {
    const Graph a = read_edge_list(data_file("twins_a.txt").string());
    const Graph b = read_edge_list(data_file("twins_b.txt").string());
    REQUIRE(a.vertex_count() == 10);
    REQUIRE(b.vertex_count() == 10);
    CHECK(a.edge_count() == 13);
    CHECK(b.edge_count() == 13);
    CHECK(decks_equal(extract_deck(a, DeckMode::Unlabeled), extract_deck(b, DeckMode::Unlabeled)));
    CHECK(decks_equal(extract_deck(a, DeckMode::RootedLabeled),
                      extract_deck(b, DeckMode::RootedLabeled)));
}
