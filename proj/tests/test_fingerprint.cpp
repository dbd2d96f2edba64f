#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sga/canon.hpp"
#include "sga/deck.hpp"
#include "sga/fingerprint.hpp"
#include "sga/graph.hpp"

using namespace sga;

namespace {

Graph complete(std::uint32_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle(std::uint32_t n) {
    Graph g(n);
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

std::vector<std::string> sorted_hex(const std::vector<CanonicalCode>& codes) {
    std::vector<std::string> out;
    out.reserve(codes.size());
    for (const auto& c : codes) out.push_back(c.hex());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("card fingerprints on hand-checked cards") {
    // K4: every non-root pair shares the two remaining vertices, which span
    // an edge
    const Deck k4 = extract_deck(complete(4), DeckMode::RootedLabeled);
    CHECK(sorted_hex(card_fingerprints(k4.cards[0])) ==
          std::vector<std::string>{"0000000280", "0000000280", "0000000280"});

    // C4 cards are rooted paths: the root shares no neighbour with either
    // leaf, so both fingerprints are the empty-set code
    const Deck c4 = extract_deck(cycle(4), DeckMode::RootedLabeled);
    CHECK(sorted_hex(card_fingerprints(c4.cards[0])) ==
          std::vector<std::string>{"00000000", "00000000"});

    // a singleton card has no non-root vertices at all
    const Deck lone = extract_deck(Graph(2), DeckMode::RootedLabeled);
    CHECK(card_fingerprints(lone.cards[0]).empty());
}

TEST_CASE("pair classification on decisive and undecidable hosts") {
    // K4: each pair shares exactly the edge code -> adjacent with evidence
    const Deck k4 = extract_deck(complete(4), DeckMode::RootedLabeled);
    for (Vertex v = 0; v < 4; ++v)
        for (Vertex w = v + 1; w < 4; ++w) {
            const AdjacencyVerdict verdict = fingerprint_classify(k4, v, w);
            CHECK(verdict.v == v);
            CHECK(verdict.w == w);
            CHECK(verdict.verdict == Adjacency::Adjacent);
            REQUIRE(verdict.evidence.has_value());
            CHECK(verdict.evidence->hex() == "0000000280");
        }

    // edgeless host: singleton cards decide non-adjacency immediately
    const Deck empty = extract_deck(Graph(4), DeckMode::RootedLabeled);
    for (Vertex v = 0; v < 4; ++v)
        for (Vertex w = v + 1; w < 4; ++w) {
            const AdjacencyVerdict verdict = fingerprint_classify(empty, v, w);
            CHECK(verdict.verdict == Adjacency::NonAdjacent);
            CHECK_FALSE(verdict.evidence.has_value());
        }

    // C4: every pair shares only the empty-set code -> nothing is decided
    const Deck c4 = extract_deck(cycle(4), DeckMode::RootedLabeled);
    for (const auto& verdict : classify_all_pairs(c4))
        CHECK(verdict.verdict == Adjacency::Undecided);

    // one edge plus an isolated vertex: the singleton card keeps its pairs
    // non-adjacent, the edge pair stays undecided (only empty codes shared)
    Graph mixed(3);
    mixed.add_edge(0, 1);
    const Deck md = extract_deck(mixed, DeckMode::RootedLabeled);
    CHECK(fingerprint_classify(md, 0, 1).verdict == Adjacency::Undecided);
    CHECK(fingerprint_classify(md, 0, 2).verdict == Adjacency::NonAdjacent);
    CHECK(fingerprint_classify(md, 1, 2).verdict == Adjacency::NonAdjacent);
}

TEST_CASE("classification rejects malformed input") {
    const Deck unlabeled = extract_deck(complete(4), DeckMode::Unlabeled);
    CHECK_THROWS_AS(fingerprint_classify(unlabeled, 0, 1), std::invalid_argument);
    const Deck rooted = extract_deck(complete(4), DeckMode::RootedLabeled);
    CHECK_THROWS_AS(fingerprint_classify(rooted, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(fingerprint_classify(rooted, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(classify_all_pairs(unlabeled), std::invalid_argument);
}

TEST_CASE("bulk classification equals the pairwise calls in row-major order") {
    const Graph g = sample_gnp(20, 0.3, 7);
    const Deck deck = extract_deck(g, DeckMode::RootedLabeled);
    const auto all = classify_all_pairs(deck);
    REQUIRE(all.size() == 190);
    std::size_t k = 0;
    for (Vertex v = 0; v < 20; ++v)
        for (Vertex w = v + 1; w < 20; ++w, ++k) {
            const AdjacencyVerdict lone = fingerprint_classify(deck, v, w);
            CHECK(all[k].v == v);
            CHECK(all[k].w == w);
            CHECK(all[k].verdict == lone.verdict);
            CHECK(all[k].evidence == lone.evidence);
        }
}

TEST_CASE("dense random host: high accuracy, few abstentions") {
    const Graph g = sample_gnp(300, 0.25, 11);
    const auto all = classify_all_pairs(extract_deck(g, DeckMode::RootedLabeled));
    REQUIRE(all.size() == 44850);
    std::uint64_t decided = 0, correct = 0, undecided = 0;
    for (const auto& verdict : all) {
        if (verdict.verdict == Adjacency::Undecided) {
            ++undecided;
            continue;
        }
        ++decided;
        const bool truth = g.has_edge(verdict.v, verdict.w);
        if ((verdict.verdict == Adjacency::Adjacent) == truth) ++correct;
    }
    CHECK(decided == 44849);
    CHECK(undecided == 1);
    CHECK(correct == 44838);
}
