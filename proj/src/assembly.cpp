#include "sga/assembly.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sga/canon.hpp"
#include "sga/rng.hpp"

namespace sga {

namespace {

// --- full-enumeration census (n <= 7) --------------------------------------
//
// Isomorphism classes are discovered by an orbit sweep over all edge masks:
// masks are visited in increasing order, an unvisited mask is the least
// member of a fresh orbit, and its whole orbit is marked via precomputed
// pair permutations. The per-class work is |S_n| mask remaps, so the n = 7
// sweep touches 2^21 masks but only pays canonical-code and deck extraction
// for the 1044 class representatives.

struct EnumTable {
    // concatenated sorted card bytes -> canonical codes of classes with that deck
    std::unordered_map<std::string, std::vector<CanonicalCode>> buckets;
    DeckCollisionSummary summary;
};

std::string deck_key(const Deck& deck) {
    std::string key;
    for (const auto& card : deck.cards) key.append(card.bytes.begin(), card.bytes.end());
    return key;
}

Graph graph_from_mask(std::uint32_t n, std::uint64_t mask) {
    Graph g(n);
    std::uint32_t bit = 0;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j, ++bit) {
            if ((mask >> bit) & 1u) g.add_edge(i, j);
        }
    }
    return g;
}

EnumTable build_enumeration_table(std::uint32_t n) {
    const std::uint32_t pair_count = n * (n - 1) / 2;
    // pair index of {i,j} in row-major order
    std::vector<std::vector<std::uint32_t>> idx(n, std::vector<std::uint32_t>(n, 0));
    {
        std::uint32_t bit = 0;
        for (Vertex i = 0; i < n; ++i) {
            for (Vertex j = i + 1; j < n; ++j, ++bit) idx[i][j] = idx[j][i] = bit;
        }
    }
    // bit remap table per permutation
    std::vector<std::vector<std::uint32_t>> remaps;
    {
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        do {
            std::vector<std::uint32_t> remap(pair_count);
            std::uint32_t bit = 0;
            for (Vertex i = 0; i < n; ++i) {
                for (Vertex j = i + 1; j < n; ++j, ++bit) remap[bit] = idx[perm[i]][perm[j]];
            }
            remaps.push_back(std::move(remap));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    EnumTable table;
    table.summary.n = n;
    const std::uint64_t mask_count = std::uint64_t{1} << pair_count;
    std::vector<bool> visited(mask_count, false);
    for (std::uint64_t mask = 0; mask < mask_count; ++mask) {
        if (visited[mask]) continue;
        // new isomorphism class; mark its orbit
        for (const auto& remap : remaps) {
            std::uint64_t image = 0;
            std::uint64_t rest = mask;
            while (rest) {
                const int bit = std::countr_zero(rest);
                rest &= rest - 1;
                image |= std::uint64_t{1} << remap[static_cast<std::size_t>(bit)];
            }
            visited[image] = true;
        }
        const Graph g = graph_from_mask(n, mask);
        table.buckets[deck_key(extract_deck(g, DeckMode::Unlabeled))].push_back(canonical_code(g));
        ++table.summary.graph_class_count;
    }
    table.summary.deck_class_count = table.buckets.size();
    for (const auto& [key, codes] : table.buckets) {
        if (codes.size() >= 2) ++table.summary.collision_class_count;
    }
    return table;
}

// Lazily built cache, one table per vertex count. Guarded so concurrent
// sweep cells can share it; map nodes are stable, so the returned reference
// outlives the lock.
const EnumTable& enumeration_table(std::uint32_t n) {
    static std::mutex cache_mutex;
    static std::map<std::uint32_t, EnumTable> cache;
    const std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_enumeration_table(n)).first;
    return it->second;
}

// --- assembly search ---------------------------------------------------------

class AssemblySearch {
public:
    AssemblySearch(const Deck& deck, std::uint32_t n, std::uint64_t budget)
        : deck_(deck), n_(n), budget_(budget) {}

    AssemblyResult run() {
        result_.exhausted = true;

        std::vector<std::uint32_t> degrees;
        degrees.reserve(n_);
        for (const auto& card : deck_.cards) {
            const std::uint32_t k = card.vertex_count();
            if (k == 0 || k > n_) return result_; // no graph on n vertices fits this card
            degrees.push_back(k - 1);
        }
        std::sort(degrees.begin(), degrees.end(), std::greater<>());
        const std::uint64_t total = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
        if (total % 2 != 0) return result_;
        target_ = std::move(degrees);

        residual_ = target_;
        adj_.assign(n_, 0);
        finalized_.assign(n_, false);
        for (const auto& card : deck_.cards) ++remaining_[card];

        descend(0, 0);
        return std::move(result_);
    }

private:
    // Decide pair (v, w) and every later pair; rows complete in order, so by
    // the time row v closes, the closed neighbourhoods of all vertices whose
    // neighbours lie in 0..v are final and must fit the remaining cards.
    void descend(Vertex v, Vertex w_offset) {
        if (v + 1 >= n_) {
            // Adjacency is complete; vertices adjacent to the last vertex
            // have not been card-checked yet. Consume their cards now and
            // emit only if the whole multiset fits.
            std::vector<Vertex> closed;
            if (finalize_rest(closed)) emit_solution();
            undo_finalize(closed);
            return;
        }
        const Vertex w = v + 1 + w_offset;
        const Vertex next_v = (w + 1 == n_) ? v + 1 : v;
        const Vertex next_off = (w + 1 == n_) ? 0 : w_offset + 1;
        const std::uint32_t avail_v = n_ - 1 - w;
        const std::uint32_t avail_w = n_ - 2 - v;

        // branch 1: edge present
        if (residual_[v] > 0 && residual_[w] > 0) {
            if (!spend_node()) return;
            --residual_[v];
            --residual_[w];
            if (residual_[v] <= avail_v && residual_[w] <= avail_w) {
                adj_[v] |= std::uint64_t{1} << w;
                adj_[w] |= std::uint64_t{1} << v;
                branch_into(v, w, next_v, next_off);
                adj_[v] &= ~(std::uint64_t{1} << w);
                adj_[w] &= ~(std::uint64_t{1} << v);
            }
            ++residual_[v];
            ++residual_[w];
        }
        // branch 2: no edge
        if (residual_[v] <= avail_v && residual_[w] <= avail_w) {
            if (!spend_node()) return;
            branch_into(v, w, next_v, next_off);
        }
    }

    void branch_into(Vertex v, Vertex w, Vertex next_v, Vertex next_off) {
        if (w + 1 == n_) { // row v just closed
            std::vector<Vertex> closed;
            if (!finalize_closed_rows(v, closed)) {
                undo_finalize(closed);
                return;
            }
            descend(next_v, next_off);
            undo_finalize(closed);
        } else {
            descend(next_v, next_off);
        }
    }

    // Vertices u <= row whose neighbours all lie in 0..row have final closed
    // neighbourhoods; each must consume a remaining card.
    bool finalize_closed_rows(Vertex row, std::vector<Vertex>& closed) {
        const std::uint64_t seen = (row + 1 >= 64) ? ~std::uint64_t{0}
                                                   : ((std::uint64_t{1} << (row + 1)) - 1);
        for (Vertex u = 0; u <= row; ++u) {
            if (finalized_[u] || (adj_[u] & ~seen) != 0) continue;
            const Card card = card_of(u);
            auto it = remaining_.find(card);
            if (it == remaining_.end() || it->second == 0) return false;
            --it->second;
            finalized_[u] = true;
            closed.push_back(u);
            cards_taken_.push_back(std::move(card));
        }
        return true;
    }

    bool finalize_rest(std::vector<Vertex>& closed) {
        for (Vertex u = 0; u < n_; ++u) {
            if (finalized_[u]) continue;
            Card card = card_of(u);
            auto it = remaining_.find(card);
            if (it == remaining_.end() || it->second == 0) return false;
            --it->second;
            finalized_[u] = true;
            closed.push_back(u);
            cards_taken_.push_back(std::move(card));
        }
        return true;
    }

    void undo_finalize(const std::vector<Vertex>& closed) {
        for (std::size_t k = closed.size(); k-- > 0;) {
            finalized_[closed[k]] = false;
            ++remaining_[cards_taken_.back()];
            cards_taken_.pop_back();
        }
    }

    Card card_of(Vertex u) const {
        std::vector<Vertex> members;
        std::uint64_t m = adj_[u] | (std::uint64_t{1} << u);
        while (m) {
            members.push_back(static_cast<Vertex>(std::countr_zero(m)));
            m &= m - 1;
        }
        Graph local(static_cast<std::uint32_t>(members.size()));
        Vertex root_local = 0;
        for (std::size_t a = 0; a < members.size(); ++a) {
            if (members[a] == u) root_local = static_cast<Vertex>(a);
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                if ((adj_[members[a]] >> members[b]) & 1u)
                    local.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
            }
        }
        return rooted_code(local, root_local);
    }

    void emit_solution() {
        Graph g(n_);
        for (Vertex v = 0; v < n_; ++v) {
            std::uint64_t m = adj_[v] >> (v + 1) << (v + 1);
            while (m) {
                const Vertex w = static_cast<Vertex>(std::countr_zero(m));
                m &= m - 1;
                g.add_edge(v, w);
            }
        }
        CanonicalCode code = canonical_code(g);
        if (seen_.count(code)) return;
        if (!decks_equal(extract_deck(g, DeckMode::Unlabeled), deck_))
            throw std::logic_error("assembly: candidate failed the deck self-check");
        seen_.insert(std::move(code));
        result_.solutions.push_back(std::move(g));
    }

    bool spend_node() {
        if (result_.nodes_explored >= budget_) {
            result_.exhausted = false;
            return false;
        }
        ++result_.nodes_explored;
        return true;
    }

    const Deck& deck_;
    std::uint32_t n_;
    std::uint64_t budget_;
    std::vector<std::uint32_t> target_;
    std::vector<std::uint32_t> residual_;
    std::vector<std::uint64_t> adj_;
    std::vector<bool> finalized_;
    std::map<Card, std::int64_t> remaining_;
    std::vector<Card> cards_taken_;
    std::set<CanonicalCode> seen_;
    AssemblyResult result_;
};

} // namespace

AssemblyResult exact_assembly(const Deck& deck, std::uint32_t n, std::uint64_t budget) {
    if (deck.mode != DeckMode::Unlabeled)
        throw std::invalid_argument("assembly: deck must be unlabeled");
    if (deck.host_vertex_count != n || deck.cards.size() != n)
        throw std::invalid_argument("assembly: deck size does not match n");
    if (budget == 0) throw std::invalid_argument("assembly: budget must be positive");
    if (n == 0 || n > 64) throw std::invalid_argument("assembly: n must lie in 1..64");
    return AssemblySearch(deck, n, budget).run();
}

bool is_reconstructable_bruteforce(const Graph& g, BruteforceMode mode) {
    const std::uint32_t n = g.vertex_count();
    switch (mode) {
        case BruteforceMode::Enumeration: {
            if (n > kEnumerationMaxVertices)
                throw std::invalid_argument("oracle: enumeration mode requires n <= 7");
            const auto& table = enumeration_table(n);
            const auto it = table.buckets.find(deck_key(extract_deck(g, DeckMode::Unlabeled)));
            if (it == table.buckets.end())
                throw std::logic_error("oracle: deck missing from the enumeration table");
            return it->second.size() == 1;
        }
        case BruteforceMode::Assembly: {
            if (n > kAssemblyMaxVertices)
                throw std::invalid_argument("oracle: assembly mode requires n <= 12");
            const auto result = exact_assembly(extract_deck(g, DeckMode::Unlabeled), n, kOracleBudget);
            if (!result.exhausted)
                throw std::runtime_error("oracle: node budget exhausted before completion");
            if (result.solutions.empty())
                throw std::logic_error("oracle: search lost the input graph");
            return result.solutions.size() == 1;
        }
    }
    throw std::invalid_argument("oracle: unknown mode");
}

DeckCollisionSummary deck_collision_census(std::uint32_t n) {
    if (n == 0 || n > kEnumerationMaxVertices)
        throw std::invalid_argument("census: requires 1 <= n <= 7");
    return enumeration_table(n).summary;
}

std::vector<CounterexampleHit> counterexample_search(std::uint32_t n, double p,
                                                     std::uint64_t trials, std::uint64_t seed,
                                                     std::uint64_t budget) {
    if (trials == 0) throw std::invalid_argument("counterexample_search: trials must be >= 1");
    std::vector<CounterexampleHit> hits;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Graph g = sample_gnp(n, p, mix64(seed, t));
        const auto result = exact_assembly(extract_deck(g, DeckMode::Unlabeled), n, budget);
        if (result.solutions.size() < 2) continue;
        const CanonicalCode own = canonical_code(g);
        for (const Graph& h : result.solutions) {
            if (canonical_code(h) != own) {
                hits.push_back(CounterexampleHit{t, g, h, result.exhausted});
                break;
            }
        }
    }
    return hits;
}

} // namespace sga
