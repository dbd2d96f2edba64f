#include "sga/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sga {

namespace {

std::uint64_t pack_pair(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::pair<Vertex, Vertex> unpack_pair(std::uint64_t key) {
    return {static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)};
}

double empirical_density(const Graph& g) {
    const std::uint64_t n = g.vertex_count();
    if (n < 2) return 0.0;
    return 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double resolve_density(const Graph& g, std::optional<double> p) {
    if (p) {
        if (!(*p >= 0.0 && *p <= 1.0)) throw std::invalid_argument("density must lie in [0,1]");
        return *p;
    }
    return empirical_density(g);
}

// Sorted host labels of the closed neighbourhood of i.
std::vector<Vertex> closed_neighborhood(const Graph& g, Vertex i) {
    auto nb = g.neighbors(i);
    std::vector<Vertex> out;
    out.reserve(nb.size() + 1);
    bool placed = false;
    for (Vertex v : nb) {
        if (!placed && i < v) {
            out.push_back(i);
            placed = true;
        }
        out.push_back(v);
    }
    if (!placed) out.push_back(i);
    return out;
}

VertexMapping identity_mapping(const std::vector<Vertex>& domain) {
    VertexMapping m;
    m.pairs.reserve(domain.size());
    for (Vertex v : domain) m.pairs.emplace_back(v, v);
    return m;
}

// Normalizes a hint: adds the implied centre self-map, sorts by source,
// rejects duplicate sources.
std::optional<VertexMapping> normalize_hint(const VertexMapping& hint, Vertex i) {
    VertexMapping m = hint;
    bool has_center = false;
    for (const auto& [src, dst] : m.pairs) {
        if (src == i) {
            if (dst != i) return std::nullopt;
            has_center = true;
        }
    }
    if (!has_center) m.pairs.emplace_back(i, i);
    std::sort(m.pairs.begin(), m.pairs.end());
    for (std::size_t k = 1; k < m.pairs.size(); ++k) {
        if (m.pairs[k].first == m.pairs[k - 1].first) return std::nullopt;
    }
    return m;
}

} // namespace

Vertex IsoFamily::image(Vertex i, Vertex v) const {
    if (i >= maps_.size()) throw std::invalid_argument("family: centre out of range");
    auto img = maps_[i].image_of(v);
    if (!img) throw std::invalid_argument("family: vertex outside the neighbourhood of the centre");
    return *img;
}

std::optional<Vertex> IsoFamily::preimage(Vertex i, Vertex u) const {
    if (i >= maps_.size()) throw std::invalid_argument("family: centre out of range");
    for (const auto& [src, dst] : maps_[i].pairs) {
        if (dst == u) return src;
    }
    return std::nullopt;
}

bool valid_neighborhood_map(const Graph& gamma, const Graph& gamma_tilde, Vertex i,
                            const VertexMapping& map) {
    const auto domain = closed_neighborhood(gamma, i);
    if (map.pairs.size() != domain.size()) return false;

    std::vector<Vertex> sources, images;
    sources.reserve(map.pairs.size());
    images.reserve(map.pairs.size());
    for (const auto& [src, dst] : map.pairs) {
        sources.push_back(src);
        images.push_back(dst);
        if (src == i && dst != i) return false;
    }
    std::sort(sources.begin(), sources.end());
    if (sources != domain) return false;

    std::sort(images.begin(), images.end());
    if (images != closed_neighborhood(gamma_tilde, i)) return false;
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;

    // Edge preservation over the closed neighbourhood, both directions.
    for (std::size_t a = 0; a < map.pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < map.pairs.size(); ++b) {
            const bool left = gamma.has_edge(map.pairs[a].first, map.pairs[b].first);
            const bool right = gamma_tilde.has_edge(map.pairs[a].second, map.pairs[b].second);
            if (left != right) return false;
        }
    }
    return true;
}

FamilyBuildResult build_iso_family(const Graph& gamma, const Graph& gamma_tilde,
                                   const std::vector<std::optional<VertexMapping>>* hints) {
    const std::uint32_t n = gamma.vertex_count();
    if (gamma_tilde.vertex_count() != n)
        throw std::invalid_argument("family: graphs must share one vertex set");
    if (hints && hints->size() != n)
        throw std::invalid_argument("family: hint table size must equal the vertex count");

    FamilyBuildResult result;
    std::vector<VertexMapping> maps;
    maps.reserve(n);
    result.sources.reserve(n);

    for (Vertex i = 0; i < n; ++i) {
        std::optional<VertexMapping> chosen;
        FamilyMapSource source = FamilyMapSource::Search;

        if (hints && (*hints)[i]) {
            if (auto hint = normalize_hint(*(*hints)[i], i);
                hint && valid_neighborhood_map(gamma, gamma_tilde, i, *hint)) {
                chosen = std::move(hint);
                source = FamilyMapSource::Hint;
            }
        }
        if (!chosen) {
            auto ident = identity_mapping(closed_neighborhood(gamma, i));
            if (valid_neighborhood_map(gamma, gamma_tilde, i, ident)) {
                chosen = std::move(ident);
                source = FamilyMapSource::Identity;
            }
        }
        if (!chosen) {
            const RootedGraph a = neighborhood(gamma, i);
            const RootedGraph b = neighborhood(gamma_tilde, i);
            if (auto found = find_fixed_point_isomorphism(a, b)) {
                if (!valid_neighborhood_map(gamma, gamma_tilde, i, *found))
                    throw std::logic_error("family: searched map failed verification");
                chosen = std::move(found);
                source = FamilyMapSource::Search;
            }
        }
        if (!chosen) {
            result.failed_at = i;
            return result;
        }
        std::sort(chosen->pairs.begin(), chosen->pairs.end());
        maps.push_back(std::move(*chosen));
        result.sources.push_back(source);
    }

    result.family.emplace(std::move(maps));
    return result;
}

std::vector<std::optional<VertexMapping>> parse_hints_text(const std::string& text,
                                                           std::uint32_t n) {
    std::vector<std::optional<VertexMapping>> hints(n);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::uint64_t center = 0, src = 0, dst = 0;
        if (!(ls >> center)) continue; // blank
        if (!(ls >> src >> dst))
            throw std::runtime_error("hints: line " + std::to_string(line_no) +
                                     ": expected \"center source image\"");
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("hints: line " + std::to_string(line_no) + ": trailing tokens");
        if (center < 1 || center > n || src < 1 || src > n || dst < 1 || dst > n)
            throw std::runtime_error("hints: line " + std::to_string(line_no) +
                                     ": labels must lie in 1.." + std::to_string(n));
        auto& slot = hints[static_cast<std::size_t>(center - 1)];
        if (!slot) slot.emplace();
        slot->pairs.emplace_back(static_cast<Vertex>(src - 1), static_cast<Vertex>(dst - 1));
    }
    for (auto& slot : hints) {
        if (!slot) continue;
        std::sort(slot->pairs.begin(), slot->pairs.end());
        for (std::size_t k = 1; k < slot->pairs.size(); ++k) {
            if (slot->pairs[k].first == slot->pairs[k - 1].first &&
                slot->pairs[k].second != slot->pairs[k - 1].second)
                throw std::runtime_error("hints: one source mapped to two images");
        }
        slot->pairs.erase(std::unique(slot->pairs.begin(), slot->pairs.end()), slot->pairs.end());
    }
    return hints;
}

std::vector<std::optional<VertexMapping>> read_hints(const std::filesystem::path& path,
                                                     std::uint32_t n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("hints: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hints_text(buf.str(), n);
}

FocusReport focused_pairs(const Graph& gamma, const Graph& gamma_tilde, const IsoFamily& family,
                          double eps, std::optional<double> p) {
    const std::uint32_t n = gamma.vertex_count();
    if (family.size() != n || gamma_tilde.vertex_count() != n)
        throw std::invalid_argument("focused_pairs: size mismatch");
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("focused_pairs: eps must be in (0,1]");

    FocusReport report;
    report.epsilon = eps;
    report.p = resolve_density(gamma, p);
    report.pair_count = static_cast<std::uint64_t>(n) * (n - 1) / 2;

    const double np2 = static_cast<double>(n) * report.p * report.p;
    report.sub_threshold = np2 < 1.0;
    report.support_required = std::max(1.0, (1.0 - eps) * np2);
    const double a1_combo_need = 0.5 * eps * eps * np2;
    const double a1_pair_need = 0.25 * eps * eps * np2;

    // pair -> (image pair -> container count), keyed for deterministic order
    std::map<std::uint64_t, std::map<std::uint64_t, std::uint32_t>> by_pair;
    std::unordered_map<std::uint64_t, std::uint64_t> image_total;
    image_total.reserve(static_cast<std::size_t>(n) * 4);

    for (Vertex i = 0; i < n; ++i) {
        const auto nb = gamma.neighbors(i);
        report.a_count += static_cast<std::uint64_t>(nb.size()) * (nb.size() ? nb.size() - 1 : 0) / 2;
        for (std::size_t a = 0; a < nb.size(); ++a) {
            const Vertex va = nb[a];
            const Vertex ia = family.image(i, va);
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                const Vertex vb = nb[b];
                const std::uint64_t img = pack_pair(ia, family.image(i, vb));
                ++by_pair[pack_pair(va, vb)][img];
                ++image_total[img];
            }
        }
    }

    for (const auto& [pair_key, buckets] : by_pair) {
        std::uint32_t containers = 0;
        std::uint64_t best_img = 0;
        std::uint32_t best_count = 0;
        std::uint64_t a1_support = 0;
        for (const auto& [img, count] : buckets) {
            containers += count;
            if (count > best_count) { // ties resolve to the smallest image pair
                best_count = count;
                best_img = img;
            }
            const std::uint64_t others = image_total.at(img) - count;
            if (static_cast<double>(others) >= a1_combo_need) {
                report.a1_count += count;
                a1_support += count;
            }
        }
        if (static_cast<double>(a1_support) >= a1_pair_need) ++report.s_a1_count;
        if (static_cast<double>(best_count) >= report.support_required) {
            const auto [v, w] = unpack_pair(pair_key);
            const auto [x, y] = unpack_pair(best_img);
            report.focused.push_back(FocusedPair{v, w, x, y, best_count, containers});
        }
    }
    report.focused_count = report.focused.size();
    report.e1_holds =
        static_cast<double>(report.focused_count) >= (1.0 - eps) * static_cast<double>(report.pair_count);
    return report;
}

FocusMultigraphReport focus_multigraph(const Graph& gamma, const Graph& gamma_tilde,
                                       const IsoFamily& family, double eps, Vertex z,
                                       std::uint32_t jz_min, std::optional<double> p) {
    const std::uint32_t n = gamma.vertex_count();
    if (z >= n) throw std::invalid_argument("focus_multigraph: vertex out of range");

    const FocusReport focus = focused_pairs(gamma, gamma_tilde, family, eps, p);
    std::unordered_map<std::uint64_t, std::uint64_t> focus_of;
    focus_of.reserve(focus.focused.size() * 2);
    for (const auto& f : focus.focused) focus_of.emplace(pack_pair(f.v, f.w), pack_pair(f.x, f.y));

    FocusMultigraphReport report;
    report.z = z;

    // M_z(i): neighbours v of i (v != z) whose pair {v,z} is focused and
    // mapped by f_i onto its focus.
    std::vector<Vertex> members;       // J_z
    std::vector<std::vector<Vertex>> m_sets;
    for (Vertex i : gamma.neighbors(z)) {
        std::vector<Vertex> m;
        const Vertex iz = family.image(i, z);
        for (Vertex v : gamma.neighbors(i)) {
            if (v == z) continue;
            auto it = focus_of.find(pack_pair(v, z));
            if (it == focus_of.end()) continue;
            if (pack_pair(family.image(i, v), iz) == it->second) m.push_back(v);
        }
        if (m.size() >= jz_min) {
            members.push_back(i);
            m_sets.push_back(std::move(m));
        }
    }
    report.jz_size = static_cast<std::uint32_t>(members.size());

    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            const auto& sa = m_sets[a];
            const auto& sb = m_sets[b];
            std::size_t ia = 0, ib = 0;
            while (ia < sa.size() && ib < sb.size()) {
                if (sa[ia] < sb[ib]) ++ia;
                else if (sa[ia] > sb[ib]) ++ib;
                else { ++report.total_multiplicity; ++ia; ++ib; }
            }
            if (family.image(members[a], z) != family.image(members[b], z)) ++report.cross_pairs;
        }
    }
    return report;
}

std::pair<double, double> jensen_intersection_bound(const std::vector<VertexSet>& sets,
                                                    std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("jensen: universe must be nonempty");
    for (const auto& s : sets) {
        if (s.universe() != m) throw std::invalid_argument("jensen: set universe mismatch");
    }
    double lhs = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        total += static_cast<double>(sets[i].count());
        for (std::size_t j = 0; j < sets.size(); ++j) {
            const auto& wa = sets[i].words();
            const auto& wb = sets[j].words();
            std::uint64_t inter = 0;
            for (std::size_t k = 0; k < wa.size(); ++k) inter += std::popcount(wa[k] & wb[k]);
            lhs += static_cast<double>(inter);
        }
    }
    return {lhs, total * total / static_cast<double>(m)};
}

bool VotePermutation::e2_holds(double eps, double p) const {
    const double n = static_cast<double>(pi.size());
    const double votes_needed = (1.0 - eps) * n * p;
    std::uint64_t good = 0;
    for (std::uint32_t v : votes_for_pi) {
        if (static_cast<double>(v) >= votes_needed) ++good;
    }
    return static_cast<double>(good) >= (1.0 - eps) * n;
}

VotePermutation vote_permutation(const Graph& gamma, const Graph& gamma_tilde,
                                 const IsoFamily& family) {
    const std::uint32_t n = gamma.vertex_count();
    if (family.size() != n || gamma_tilde.vertex_count() != n)
        throw std::invalid_argument("vote_permutation: size mismatch");

    VotePermutation out;
    out.pi_prime.resize(n);
    out.share.assign(n, 0.0);
    out.in_core.assign(n, false);
    out.votes_for_pi.assign(n, 0);

    for (Vertex z = 0; z < n; ++z) {
        const auto nb = gamma.neighbors(z);
        if (nb.empty()) continue;
        std::map<Vertex, std::uint32_t> votes;
        for (Vertex i : nb) ++votes[family.image(i, z)];
        Vertex best = 0;
        std::uint32_t best_count = 0;
        for (const auto& [img, count] : votes) {
            if (count > best_count) { // ties resolve to the smallest image label
                best = img;
                best_count = count;
            }
        }
        out.pi_prime[z] = best;
        out.share[z] = static_cast<double>(best_count) / static_cast<double>(nb.size());
    }

    // Maximal injective restriction, greedily by ascending source label.
    std::vector<bool> used(n, false);
    out.pi.assign(n, 0);
    for (Vertex z = 0; z < n; ++z) {
        if (out.pi_prime[z] && !used[*out.pi_prime[z]]) {
            out.pi[z] = *out.pi_prime[z];
            used[out.pi[z]] = true;
            out.in_core[z] = true;
        }
    }
    // Deterministic completion: unmatched sources ascending onto unused
    // targets ascending.
    std::vector<Vertex> unused;
    for (Vertex t = 0; t < n; ++t) {
        if (!used[t]) unused.push_back(t);
    }
    std::size_t next = 0;
    for (Vertex z = 0; z < n; ++z) {
        if (!out.in_core[z]) out.pi[z] = unused[next++];
    }

    for (Vertex z = 0; z < n; ++z) {
        std::uint32_t count = 0;
        for (Vertex i : gamma.neighbors(z)) {
            if (family.image(i, z) == out.pi[z]) ++count;
        }
        out.votes_for_pi[z] = count;
    }
    return out;
}

bool MatchedIncidence::e3_holds(double eps, double p) const {
    const double nn = static_cast<double>(n);
    return static_cast<double>(count) >= (1.0 - eps) * nn * nn * p;
}

MatchedIncidence e3_margin(const Graph& gamma, const IsoFamily& family) {
    const std::uint32_t n = gamma.vertex_count();
    if (family.size() != n) throw std::invalid_argument("e3_margin: size mismatch");
    MatchedIncidence out;
    out.n = n;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex z : gamma.neighbors(i)) {
            if (family.image(i, z) == z) ++out.count;
        }
    }
    return out;
}

std::vector<std::pair<Vertex, Vertex>> mismatch_pairs(const Graph& gamma,
                                                      const IsoFamily& family,
                                                      const std::vector<Vertex>& pi) {
    const std::uint32_t n = gamma.vertex_count();
    if (family.size() != n || pi.size() != n)
        throw std::invalid_argument("mismatch_pairs: size mismatch");
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : gamma.neighbors(v)) {
            if (const Vertex img = family.image(v, w); img == pi[w] && img != w)
                out.emplace_back(v, w);
        }
    }
    return out;
}

MatchPartition match_partition(const Graph& gamma, const Graph& gamma_tilde,
                               const IsoFamily& family, std::optional<double> p) {
    const std::uint32_t n = gamma.vertex_count();
    if (family.size() != n || gamma_tilde.vertex_count() != n)
        throw std::invalid_argument("match_partition: size mismatch");

    MatchPartition out;
    out.p_count = 2 * gamma.edge_count();
    const double density = resolve_density(gamma, p);
    out.v_threshold = 0.6 * static_cast<double>(n) * density * density;
    out.j_m_threshold = static_cast<double>(n) * density / 10.0;
    out.j_m = VertexSet(n);

    // matched[v]: neighbours fixed by f_v, as a set for fast joint counts.
    std::vector<VertexSet> fixed(n, VertexSet(n));
    std::vector<std::uint32_t> unmatched_count(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : gamma.neighbors(v)) {
            if (family.image(v, w) == w) {
                fixed[v].add(w);
                out.matched.emplace_back(v, w);
            } else {
                ++unmatched_count[v];
            }
        }
        if (static_cast<double>(unmatched_count[v]) <= out.j_m_threshold) out.j_m.add(v);
        else out.j_m_complement.push_back(v);
    }

    // V: ordered edges (v,w) with many z simultaneously fixed by f_v and
    // adjacent to w.
    for (Vertex v = 0; v < n; ++v) {
        const auto& fv = fixed[v].words();
        for (Vertex w : gamma.neighbors(v)) {
            const auto row = gamma.row(w);
            std::uint64_t support = 0;
            for (std::size_t k = 0; k < fv.size(); ++k) support += std::popcount(fv[k] & row[k]);
            if (static_cast<double>(support) >= out.v_threshold) out.verified.emplace_back(v, w);
        }
    }

    // (v,w) in V \ M  =>  (w~, u) with w~ = f_v(w), u = f_{w~}^{-1}(v) must
    // fall outside V; anything else is reported.
    const auto in_verified = [&](Vertex a, Vertex b) {
        return std::binary_search(out.verified.begin(), out.verified.end(), std::make_pair(a, b));
    };
    for (const auto& [v, w] : out.verified) {
        const Vertex img = family.image(v, w);
        if (img == w) continue; // in M
        const auto u = family.preimage(img, v);
        if (!u || !gamma.has_edge(img, *u) || in_verified(img, *u))
            out.implication_violations.emplace_back(v, w);
    }
    return out;
}

std::vector<Vertex> bootstrap_set(const Graph& gamma, const IsoFamily& family,
                                  const MatchPartition& partition, Vertex v) {
    if (v >= gamma.vertex_count()) throw std::invalid_argument("bootstrap_set: vertex out of range");
    std::vector<Vertex> out;
    for (Vertex w : gamma.neighbors(v)) {
        if (const Vertex img = family.image(v, w); img != w && partition.j_m.contains(img))
            out.push_back(w);
    }
    return out;
}

std::vector<std::pair<Vertex, Vertex>> bootstrap_edges(const Graph& gamma,
                                                       const IsoFamily& family,
                                                       const MatchPartition& partition,
                                                       Vertex v) {
    const auto iv = bootstrap_set(gamma, family, partition, v);
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t a = 0; a < iv.size(); ++a) {
        for (std::size_t b = a + 1; b < iv.size(); ++b) {
            if (gamma.has_edge(iv[a], iv[b]) &&
                gamma.has_edge(family.image(v, iv[a]), family.image(v, iv[b])))
                out.emplace_back(iv[a], iv[b]);
        }
    }
    return out;
}

GrowthCheck growth_check(const Graph& gamma, const IsoFamily& family,
                         const MatchPartition& partition, Vertex v) {
    const auto ev = bootstrap_edges(gamma, family, partition, v);
    GrowthCheck out;
    out.e_v_size = ev.size();
    std::vector<std::uint64_t> keys;
    keys.reserve(2 * ev.size());
    for (const auto& [a, b] : ev) {
        keys.push_back(pack_pair(a, b));
        keys.push_back(pack_pair(family.image(v, a), family.image(v, b)));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    out.union_size = keys.size();
    out.meets_growth = 2 * out.union_size >= 3 * out.e_v_size;
    return out;
}

} // namespace sga
