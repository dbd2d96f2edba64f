#pragma once

#include <cstdint>
#include <vector>

#include "sga/deck.hpp"
#include "sga/graph.hpp"

namespace sga {

struct AssemblyResult {
    // One representative per isomorphism class whose deck equals the input.
    std::vector<Graph> solutions;
    bool exhausted = false;   // search ran to completion (vs node budget hit)
    std::uint64_t nodes_explored = 0;
};

// Backtracking search for every graph (up to isomorphism) on n vertices
// whose unlabeled deck equals `deck`. Vertex slots carry the card-derived
// degrees in non-increasing order; edges are decided in row-major order with
// residual-degree pruning, and each closed neighbourhood completed along the
// way must still fit the remaining card multiset. Every solution re-decks to
// the input before it is returned. Pre: deck is unlabeled, matches n, and
// budget > 0.
AssemblyResult exact_assembly(const Deck& deck, std::uint32_t n, std::uint64_t budget);

enum class BruteforceMode : std::uint8_t {
    Enumeration, // loop over all 2^C(n,2) labeled graphs (n <= 7)
    Assembly,    // exact_assembly on the deck (n <= 12)
};

inline constexpr std::uint32_t kEnumerationMaxVertices = 7;
inline constexpr std::uint32_t kAssemblyMaxVertices = 12;
inline constexpr std::uint64_t kOracleBudget = 200'000'000;

// True iff every graph sharing g's unlabeled deck is isomorphic to g.
// Enumeration mode memoizes, per vertex count, the full map from deck to the
// isomorphism classes realizing it (first call at a given n pays the sweep).
bool is_reconstructable_bruteforce(const Graph& g, BruteforceMode mode);

struct DeckCollisionSummary {
    std::uint32_t n = 0;
    std::uint64_t graph_class_count = 0;     // isomorphism classes at this n
    std::uint64_t deck_class_count = 0;      // distinct unlabeled decks
    std::uint64_t collision_class_count = 0; // decks shared by >= 2 classes
};

// Full-enumeration census at n <= 7 (same cache as the oracle).
DeckCollisionSummary deck_collision_census(std::uint32_t n);

struct CounterexampleHit {
    std::uint64_t trial = 0;
    Graph g;            // the sampled graph
    Graph h;            // a non-isomorphic graph with the same deck
    bool exhausted = false; // whether the assembly search completed
};

// Samples `trials` graphs from G(n,p) (trial t uses an independent stream of
// `seed`) and returns those whose deck admits a second isomorphism class
// within the per-instance node budget.
std::vector<CounterexampleHit> counterexample_search(std::uint32_t n, double p,
                                                     std::uint64_t trials, std::uint64_t seed,
                                                     std::uint64_t budget = 20'000'000);

} // namespace sga
