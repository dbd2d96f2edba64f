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

// Per-vertex family of center-fixing isomorphisms f_i between the closed
// 1-neighbourhoods of vertex i in two graphs on the same vertex set. Every
// map is stored on host labels, includes i -> i, and has been verified
// bijective and edge-preserving at construction.
class IsoFamily {
public:
    explicit IsoFamily(std::vector<VertexMapping> maps) : maps_(std::move(maps)) {}

    std::uint32_t size() const { return static_cast<std::uint32_t>(maps_.size()); }
    const VertexMapping& map_of(Vertex i) const { return maps_[i]; }

    // f_i(v); throws std::invalid_argument when v is outside N[i].
    Vertex image(Vertex i, Vertex v) const;
    // f_i^{-1}(u); empty when u is outside the image neighbourhood.
    std::optional<Vertex> preimage(Vertex i, Vertex u) const;

private:
    std::vector<VertexMapping> maps_;
};

// How each per-vertex map was obtained.
enum class FamilyMapSource : std::uint8_t { Hint, Identity, Search };

struct FamilyBuildResult {
    std::optional<IsoFamily> family;          // empty on failure
    std::optional<Vertex> failed_at;          // first vertex with no valid map
    std::vector<FamilyMapSource> sources;     // per vertex, filled up to failure
};

// Validates a candidate map for vertex i: bijection between the closed
// neighbourhoods, i -> i, edge-preserving both ways.
bool valid_neighborhood_map(const Graph& gamma, const Graph& gamma_tilde, Vertex i,
                            const VertexMapping& map);

// Builds the family, trying per-vertex hints first (invalid hints fall
// through), then the identity map, then a canonical-form search. Pre: same
// vertex count (throws std::invalid_argument).
FamilyBuildResult build_iso_family(
    const Graph& gamma, const Graph& gamma_tilde,
    const std::vector<std::optional<VertexMapping>>* hints = nullptr);

// Hints file: lines "center source image" with 1-based labels, '#' comments.
// The center self-map is implied. Missing centers stay empty.
std::vector<std::optional<VertexMapping>> parse_hints_text(const std::string& text,
                                                           std::uint32_t n);
std::vector<std::optional<VertexMapping>> read_hints(const std::filesystem::path& path,
                                                     std::uint32_t n);

// ---------------------------------------------------------------------------
// Step I: focused pairs and the collision sets A, A1, S_A1.

struct FocusedPair {
    Vertex v = 0, w = 0;      // the pair, v < w
    Vertex x = 0, y = 0;      // its focus, x < y
    std::uint32_t support = 0;    // containers mapping it to the focus
    std::uint32_t containers = 0; // all containers
};

struct FocusReport {
    double epsilon = 0;
    double p = 0;               // density used for thresholds
    double support_required = 0; // max(1, (1-eps) n p^2)
    bool sub_threshold = false;  // n p^2 < 1: requirement floored at one
    std::uint64_t pair_count = 0;      // C(n,2)
    std::uint64_t focused_count = 0;
    std::uint64_t a_count = 0;   // |A|  = sum over i of C(deg(i),2)
    std::uint64_t a1_count = 0;  // |A1| per the half-eps^2 n p^2 rule
    std::uint64_t s_a1_count = 0; // pairs carrying >= (eps^2/4) n p^2 of A1
    bool e1_holds = false;       // focused_count >= (1-eps) C(n,2)
    std::vector<FocusedPair> focused; // sorted by (v,w)
};

// eps in (0,1]; p defaults to the empirical density 2|E| / (n(n-1)).
FocusReport focused_pairs(const Graph& gamma, const Graph& gamma_tilde, const IsoFamily& family,
                          double eps, std::optional<double> p = std::nullopt);

// ---------------------------------------------------------------------------
// Step II helpers: the collision multigraph at a vertex and the averaging
// inequality backing it.

struct FocusMultigraphReport {
    Vertex z = 0;
    std::uint32_t jz_size = 0;
    // Sum over unordered pairs i1 != i2 in J_z of |M_z(i1) ∩ M_z(i2)|.
    std::uint64_t total_multiplicity = 0;
    // Unordered pairs i1, i2 in J_z whose maps disagree about z's image.
    std::uint64_t cross_pairs = 0;
};

// J_z keeps neighbours i of z with |M_z(i)| >= jz_min (the source bound on
// |M_z(i)| involves an unspecified universal constant, so the threshold is
// a free parameter; 0 keeps every neighbour).
FocusMultigraphReport focus_multigraph(const Graph& gamma, const Graph& gamma_tilde,
                                       const IsoFamily& family, double eps, Vertex z,
                                       std::uint32_t jz_min = 0,
                                       std::optional<double> p = std::nullopt);

// Both sides of the averaging bound: sum_{i,j} |U_i ∩ U_j| (diagonal
// included) >= (sum |U_i|)^2 / m. Pre: every set's universe is m, m >= 1.
std::pair<double, double> jensen_intersection_bound(const std::vector<VertexSet>& sets,
                                                    std::uint32_t m);

// ---------------------------------------------------------------------------
// Step II/III: the plurality-vote permutation and the matched-incidence
// count.

struct VotePermutation {
    std::vector<Vertex> pi;                      // the completed permutation
    std::vector<std::optional<Vertex>> pi_prime; // plurality image, empty if isolated
    std::vector<double> share;                   // plurality share of z's neighbours
    std::vector<bool> in_core;                   // kept by the injective restriction
    std::vector<std::uint32_t> votes_for_pi;     // neighbours i of z with f_i(z) = pi(z)

    // Event shape: at least (1-eps) n vertices get at least (1-eps) n p
    // votes for their pi value.
    bool e2_holds(double eps, double p) const;
};

VotePermutation vote_permutation(const Graph& gamma, const Graph& gamma_tilde,
                                 const IsoFamily& family);

struct MatchedIncidence {
    std::uint64_t count = 0; // sum over i of |{z ~ i : f_i(z) = z}|
    std::uint32_t n = 0;

    // count >= (1-eps) n^2 p
    bool e3_holds(double eps, double p) const;
};

MatchedIncidence e3_margin(const Graph& gamma, const IsoFamily& family);

// Ordered pairs (v,w): {v,w} an edge and f_v(w) = pi(w) != w, sorted.
std::vector<std::pair<Vertex, Vertex>> mismatch_pairs(const Graph& gamma,
                                                      const IsoFamily& family,
                                                      const std::vector<Vertex>& pi);

// ---------------------------------------------------------------------------
// Step IV: matched ordered edges and the bootstrap sets.

struct MatchPartition {
    std::uint64_t p_count = 0;                        // ordered edges |P|
    std::vector<std::pair<Vertex, Vertex>> matched;   // M, sorted
    std::vector<std::pair<Vertex, Vertex>> verified;  // V, sorted
    VertexSet j_m;                                    // vertices with few unmatched pairs
    std::vector<Vertex> j_m_complement;               // sorted
    double v_threshold = 0;                           // (6/10) n p^2
    double j_m_threshold = 0;                         // n p / 10
    // Ordered pairs violating the step-IV implication
    // (v,w) in V \ M  =>  (f_v(w), f_{f_v(w)}^{-1}(v)) outside V.
    std::vector<std::pair<Vertex, Vertex>> implication_violations;
};

MatchPartition match_partition(const Graph& gamma, const Graph& gamma_tilde,
                               const IsoFamily& family,
                               std::optional<double> p = std::nullopt);

// I_v: neighbours w of v with f_v(w) != w and f_v(w) inside j_m.
std::vector<Vertex> bootstrap_set(const Graph& gamma, const IsoFamily& family,
                                  const MatchPartition& partition, Vertex v);

// E_v: edges {w,w'} inside I_v whose images also form an edge of gamma.
std::vector<std::pair<Vertex, Vertex>> bootstrap_edges(const Graph& gamma,
                                                       const IsoFamily& family,
                                                       const MatchPartition& partition,
                                                       Vertex v);

// |E_v ∪ f_v(E_v)| against (3/2)|E_v| — reported, never asserted: the growth
// bound is only guaranteed under the audited typicality premises at scale.
struct GrowthCheck {
    std::uint64_t e_v_size = 0;
    std::uint64_t union_size = 0;
    bool meets_growth = false;
};

GrowthCheck growth_check(const Graph& gamma, const IsoFamily& family,
                         const MatchPartition& partition, Vertex v);

} // namespace sga
