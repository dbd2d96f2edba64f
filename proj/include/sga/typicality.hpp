#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sga/graph.hpp"

namespace sga {

// Exponent of the slowly-decaying log factor in the pair-codegree window.
inline constexpr double kLogWindowExponent = 1.0 / 100.0;

// Cap for the full triple scan; larger graphs get a uniform triple sample.
inline constexpr std::uint32_t kTripleFullScanMax = 1500;
inline constexpr std::uint64_t kTripleSampleCount = 1'000'000;

// One offending (or near-offending) object of an audit.
struct EventWitness {
    std::vector<Vertex> where; // vertex / pair / triple / subset anchor
    double observed = 0.0;     // the measured count or deviation
    double margin = 0.0;       // deviation minus allowance; > 0 violates
    std::string note;          // extra context, e.g. subset size

    friend bool operator==(const EventWitness&, const EventWitness&) = default;
};

// Outcome of auditing one structural event. margin convention throughout:
// margin = deviation - allowance, so the event holds iff every margin <= 0;
// worst_margin is the maximum margin seen and is empty when no check ran
// (e.g. no subset satisfied the event's size constraints).
struct EventRecord {
    std::string name;
    bool holds = true;
    std::optional<double> worst_margin;
    std::string mode; // "full" | "sampled"
    std::uint64_t checks = 0;
    std::vector<EventWitness> witnesses;  // worst offenders, bounded
    std::map<std::string, double> aux;    // named extras (alt margins, rates)
};

inline constexpr std::size_t kMaxWitnesses = 8;

struct TypicalityReport {
    std::uint32_t n = 0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<EventRecord> events;

    bool all_hold() const;
    const EventRecord* find(const std::string& name) const;
};

// Closed-neighbourhood sizes: | (deg(i)+1) - np | <= (log n / sqrt(np)) np
// for every vertex. aux carries the same margin for the raw degree, since at
// small n the +1 can decide the verdict by itself. Pre: np > 0.
EventRecord audit_degrees(const Graph& g, double p);

// Pair codegrees within [(1 - log^{-1/100} n) np^2, (1 + ...) np^2], every
// pair checked.
EventRecord audit_pair_codegree(const Graph& g, double p);

// Triple codegrees at most np^2 / 10; full scan up to kTripleFullScanMax
// vertices, uniform sample of kTripleSampleCount triples beyond that.
EventRecord audit_triple_codegree(const Graph& g, double p, std::uint64_t seed = 0);

// Edge counts of induced subgraphs on J subset of N(v):
// | |E(G_J)| - p C(|J|,2) | <= 8 n^{3/2} p^2 for `trials` random subsets per
// vertex plus the empty and the full neighbourhood. Pre: trials >= 1.
EventRecord audit_subgraph_edges(const Graph& g, double p, std::uint64_t trials,
                                 std::uint64_t seed = 0);

// Neighbourhood expansion: for J subset of N(v) with |J| <= np/3, the number
// of w in N(v) having at most 0.999 (np - |J|) p edges into N(v) \ J stays
// below (log^2 n / np^2) |J|. Sampled. Pre: trials >= 1, np^2 > 0.
EventRecord audit_expansion(const Graph& g, double p, std::uint64_t trials,
                            std::uint64_t seed = 0);

// Local bijection cap: for disjoint I, J subset of N(u) with |I| = |J| >=
// np / log n and a bijection g between them, the count of pairs {v,w} in I
// with both {v,w} and {g(v),g(w)} edges is at most 0.001 (|I|^2/2) p.
// Sampled over random (u, I, J, g). Pre: trials >= 1.
EventRecord audit_local_bijection(const Graph& g, double p, std::uint64_t trials,
                                  std::uint64_t seed = 0);

// Replay of the local-bijection cap on one explicit bijection, given as
// (source, image) pairs with sources the set I. Pairs whose sources/images
// do not satisfy the event's side conditions (disjoint I and image set,
// size >= np / log n) are still evaluated; qualification is reported in the
// witness note so callers can filter.
EventWitness local_bijection_check(const Graph& g, double p,
                                   const std::vector<std::pair<Vertex, Vertex>>& bijection);

// Cut sizes: | |E(J, J^c)| - |J|(n-|J|) p | <= log n sqrt(np) |J| for
// `trials` random subsets of [n] plus the empty set and [n] itself.
// Pre: trials >= 1.
EventRecord audit_cut_edges(const Graph& g, double p, std::uint64_t trials,
                            std::uint64_t seed = 0);

// Runs all seven audits with per-audit derived seeds.
TypicalityReport audit_all(const Graph& g, double p, std::uint64_t trials,
                           std::uint64_t seed = 0);

// Two-sided Bernstein tail 2 exp(-(t^2/2)/(mq + t)) for the deviation of a
// Binomial(m, q) from its mean. Pre: m >= 1, q in [0,1], t > 0.
double bernstein_tail(double m, double q, double t);

} // namespace sga
