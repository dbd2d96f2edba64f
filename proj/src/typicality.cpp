#include "sga/typicality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "sga/parallel.hpp"
#include "sga/rng.hpp"

namespace sga {

namespace {

// Bounded worst-offender list ordered by (margin desc, where asc, note asc).
struct WitnessHeap {
    std::vector<EventWitness> items;

    static bool before(const EventWitness& a, const EventWitness& b) {
        if (a.margin != b.margin) return a.margin > b.margin;
        if (a.where != b.where) return a.where < b.where;
        return a.note < b.note;
    }

    void push(EventWitness w) {
        auto pos = std::upper_bound(items.begin(), items.end(), w, before);
        if (items.size() >= kMaxWitnesses && pos == items.end()) return;
        items.insert(pos, std::move(w));
        if (items.size() > kMaxWitnesses) items.pop_back();
    }

    void merge(WitnessHeap&& other) {
        for (auto& w : other.items) push(std::move(w));
    }
};

// Shared accumulator for one audit: worst margin, check count, offenders.
struct AuditState {
    double worst = -std::numeric_limits<double>::infinity();
    std::uint64_t checks = 0;
    WitnessHeap heap;

    void record(double margin, std::vector<Vertex> where, double observed,
                std::string note = {}) {
        ++checks;
        worst = std::max(worst, margin);
        heap.push(EventWitness{std::move(where), observed, margin, std::move(note)});
    }

    void merge(AuditState&& other) {
        worst = std::max(worst, other.worst);
        checks += other.checks;
        heap.merge(std::move(other.heap));
    }
};

EventRecord finish(std::string name, std::string mode, AuditState state) {
    EventRecord rec;
    rec.name = std::move(name);
    rec.mode = std::move(mode);
    rec.checks = state.checks;
    if (state.checks > 0) rec.worst_margin = state.worst;
    rec.holds = !rec.worst_margin || *rec.worst_margin <= 0.0;
    rec.witnesses = std::move(state.heap.items);
    return rec;
}

std::uint32_t intersect2(const Graph& g, Vertex a, Vertex b) {
    auto ra = g.row(a);
    auto rb = g.row(b);
    std::uint32_t total = 0;
    for (std::size_t w = 0; w < ra.size(); ++w)
        total += static_cast<std::uint32_t>(std::popcount(ra[w] & rb[w]));
    return total;
}

std::uint32_t intersect3(const Graph& g, Vertex a, Vertex b, Vertex c) {
    auto ra = g.row(a);
    auto rb = g.row(b);
    auto rc = g.row(c);
    std::uint32_t total = 0;
    for (std::size_t w = 0; w < ra.size(); ++w)
        total += static_cast<std::uint32_t>(std::popcount(ra[w] & rb[w] & rc[w]));
    return total;
}

std::uint32_t count_in_set(const Graph& g, Vertex v, const VertexSet& s) {
    auto row = g.row(v);
    auto words = s.words();
    std::uint32_t total = 0;
    for (std::size_t w = 0; w < words.size(); ++w)
        total += static_cast<std::uint32_t>(std::popcount(row[w] & words[w]));
    return total;
}

// Edges inside the subset held by `mask`, where `members` lists the same set.
std::uint64_t edges_in_mask(const Graph& g, const std::vector<Vertex>& members,
                            const VertexSet& mask) {
    std::uint64_t twice = 0;
    for (Vertex u : members) twice += count_in_set(g, u, mask);
    return twice / 2;
}

// First k entries of a seeded partial shuffle of `pool`.
void partial_shuffle(std::vector<Vertex>& pool, std::size_t k, Rng& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
}

constexpr std::uint64_t kTripleStream = 0xA3;
constexpr std::uint64_t kSubgraphStream = 0xA4;
constexpr std::uint64_t kExpansionStream = 0xA5;
constexpr std::uint64_t kBijectionStream = 0xA6;
constexpr std::uint64_t kCutStream = 0xA7;

Rng stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t lane) {
    return Rng(mix64(mix64(seed, stream), lane));
}

} // namespace

bool TypicalityReport::all_hold() const {
    for (const auto& e : events)
        if (!e.holds) return false;
    return true;
}

const EventRecord* TypicalityReport::find(const std::string& name) const {
    for (const auto& e : events)
        if (e.name == name) return &e;
    return nullptr;
}

double bernstein_tail(double m, double q, double t) {
    if (m < 1 || q < 0 || q > 1 || !(t > 0))
        throw std::invalid_argument("bernstein_tail needs m >= 1, q in [0,1], t > 0");
    return 2.0 * std::exp(-(t * t / 2.0) / (m * q + t));
}

EventRecord audit_degrees(const Graph& g, double p) {
    const double n = g.vertex_count();
    const double np = n * p;
    if (!(np > 0)) throw std::invalid_argument("degree audit needs np > 0");
    const double allowance = std::log(n) * std::sqrt(np);

    AuditState state;
    double worst_raw = -std::numeric_limits<double>::infinity();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double closed = g.degree(v) + 1.0;
        double margin = std::abs(closed - np) - allowance;
        state.record(margin, {v}, closed);
        worst_raw = std::max(worst_raw, std::abs(g.degree(v) - np) - allowance);
    }
    EventRecord rec = finish("degree_window", "full", std::move(state));
    rec.aux["worst_margin_raw_degree"] = worst_raw;
    return rec;
}

EventRecord audit_pair_codegree(const Graph& g, double p) {
    const double n = g.vertex_count();
    const double np2 = n * p * p;
    // The window shrinks by the slowly-decaying factor log^{-1/100} n; at
    // n = 1 the log is zero and the window is empty, which is fine (a
    // single-vertex graph has no pairs).
    const double shrink =
        g.vertex_count() >= 2 ? std::pow(std::log(n), -kLogWindowExponent) : 0.0;
    const double lo = (1.0 - shrink) * np2;
    const double hi = (1.0 + shrink) * np2;

    AuditState state = parallel_accumulate(
        0, g.vertex_count(), AuditState{},
        [&](AuditState& acc, std::uint64_t vi) {
            Vertex v = static_cast<Vertex>(vi);
            for (Vertex w = v + 1; w < g.vertex_count(); ++w) {
                double count = intersect2(g, v, w);
                double margin = std::max(count - hi, lo - count);
                acc.record(margin, {v, w}, count);
            }
        },
        [](AuditState& a, AuditState&& b) { a.merge(std::move(b)); });
    return finish("pair_codegree_window", "full", std::move(state));
}

EventRecord audit_triple_codegree(const Graph& g, double p, std::uint64_t seed) {
    const double n = g.vertex_count();
    const double bound = n * p * p / 10.0;
    const std::uint32_t nv = g.vertex_count();

    if (nv <= kTripleFullScanMax) {
        AuditState state = parallel_accumulate(
            0, nv, AuditState{},
            [&](AuditState& acc, std::uint64_t vi) {
                Vertex v = static_cast<Vertex>(vi);
                auto rv = g.row(v);
                std::vector<std::uint64_t> vw(rv.size());
                for (Vertex w = v + 1; w < nv; ++w) {
                    auto rw = g.row(w);
                    for (std::size_t k = 0; k < vw.size(); ++k) vw[k] = rv[k] & rw[k];
                    for (Vertex u = w + 1; u < nv; ++u) {
                        auto ru = g.row(u);
                        std::uint32_t count = 0;
                        for (std::size_t k = 0; k < vw.size(); ++k)
                            count += static_cast<std::uint32_t>(std::popcount(vw[k] & ru[k]));
                        acc.record(count - bound, {v, w, u}, count);
                    }
                }
            },
            [](AuditState& a, AuditState&& b) { a.merge(std::move(b)); });
        return finish("triple_codegree_cap", "full", std::move(state));
    }

    AuditState state = parallel_accumulate(
        0, kTripleSampleCount, AuditState{},
        [&](AuditState& acc, std::uint64_t t) {
            Rng rng = stream_rng(seed, kTripleStream, t);
            Vertex v = static_cast<Vertex>(rng.next_below(nv));
            Vertex w, u;
            do {
                w = static_cast<Vertex>(rng.next_below(nv));
            } while (w == v);
            do {
                u = static_cast<Vertex>(rng.next_below(nv));
            } while (u == v || u == w);
            Vertex tri[3] = {v, w, u};
            std::sort(tri, tri + 3);
            double count = intersect3(g, tri[0], tri[1], tri[2]);
            acc.record(count - bound, {tri[0], tri[1], tri[2]}, count);
        },
        [](AuditState& a, AuditState&& b) { a.merge(std::move(b)); });
    return finish("triple_codegree_cap", "sampled", std::move(state));
}

EventRecord audit_subgraph_edges(const Graph& g, double p, std::uint64_t trials,
                                 std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("subgraph audit needs trials >= 1");
    const double n = g.vertex_count();
    const double allowance = 8.0 * std::pow(n, 1.5) * p * p;

    AuditState state = parallel_accumulate(
        0, g.vertex_count(), AuditState{},
        [&](AuditState& acc, std::uint64_t vi) {
            Vertex v = static_cast<Vertex>(vi);
            std::vector<Vertex> nbrs = g.neighbors(v);

            auto check = [&](const std::vector<Vertex>& members, const VertexSet& mask,
                             const char* label) {
                double size = members.size();
                double expected = p * size * (size - 1.0) / 2.0;
                double edges = static_cast<double>(edges_in_mask(g, members, mask));
                double margin = std::abs(edges - expected) - allowance;
                acc.record(margin, {v}, edges,
                           std::string(label) + " |J|=" + std::to_string(members.size()));
            };

            check({}, VertexSet(g.vertex_count()), "empty");
            check(nbrs, g.neighbor_set(v), "full");
            for (std::uint64_t t = 0; t < trials; ++t) {
                Rng rng = stream_rng(seed, kSubgraphStream,
                                     vi * (trials + 1) + t);
                std::vector<Vertex> members;
                VertexSet mask(g.vertex_count());
                for (Vertex u : nbrs) {
                    if (rng.next_u64() & 1) {
                        members.push_back(u);
                        mask.add(u);
                    }
                }
                check(members, mask, "sampled");
            }
        },
        [](AuditState& a, AuditState&& b) { a.merge(std::move(b)); });
    return finish("subgraph_edge_counts", "sampled", std::move(state));
}

EventRecord audit_expansion(const Graph& g, double p, std::uint64_t trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("expansion audit needs trials >= 1");
    const double n = g.vertex_count();
    const double np = n * p;
    const double np2 = n * p * p;
    if (!(np2 > 0)) throw std::invalid_argument("expansion audit needs np^2 > 0");
    const double logn = std::log(n);
    const double per_element_allowance = logn * logn / np2;

    AuditState state = parallel_accumulate(
        0, g.vertex_count(), AuditState{},
        [&](AuditState& acc, std::uint64_t vi) {
            Vertex v = static_cast<Vertex>(vi);
            std::vector<Vertex> nbrs = g.neighbors(v);
            std::size_t kmax = std::min<std::size_t>(
                nbrs.size(), static_cast<std::size_t>(std::floor(np / 3.0)));
            if (kmax < 1) return;
            for (std::uint64_t t = 0; t < trials; ++t) {
                Rng rng = stream_rng(seed, kExpansionStream, vi * trials + t);
                std::size_t k = 1 + static_cast<std::size_t>(rng.next_below(kmax));
                partial_shuffle(nbrs, k, rng);
                VertexSet rest = g.neighbor_set(v);
                for (std::size_t i = 0; i < k; ++i) rest.remove(nbrs[i]);

                double threshold = 0.999 * (np - static_cast<double>(k)) * p;
                std::uint32_t poor = 0;
                for (Vertex w : nbrs)
                    if (count_in_set(g, w, rest) <= threshold) ++poor;
                double margin = poor - per_element_allowance * static_cast<double>(k);
                acc.record(margin, {v}, poor, "|J|=" + std::to_string(k));
            }
        },
        [](AuditState& a, AuditState&& b) { a.merge(std::move(b)); });
    return finish("neighborhood_expansion", "sampled", std::move(state));
}

namespace {

EventWitness bijection_witness(const Graph& g, double p, Vertex anchor,
                               const std::vector<Vertex>& sources,
                               const std::vector<Vertex>& images, bool qualifies,
                               const std::string& extra) {
    double count = 0;
    for (std::size_t a = 0; a < sources.size(); ++a)
        for (std::size_t b = a + 1; b < sources.size(); ++b)
            if (g.has_edge(sources[a], sources[b]) && g.has_edge(images[a], images[b]))
                ++count;
    double size = static_cast<double>(sources.size());
    double bound = 0.001 * (size * size / 2.0) * p;
    EventWitness w;
    w.where = {anchor};
    w.observed = count;
    w.margin = count - bound;
    w.note = "|I|=" + std::to_string(sources.size()) +
             (qualifies ? std::string() : std::string(" unqualified")) + extra;
    return w;
}

} // namespace

EventRecord audit_local_bijection(const Graph& g, double p, std::uint64_t trials,
                                  std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("bijection audit needs trials >= 1");
    const double n = g.vertex_count();
    const double np = n * p;
    const double logn = std::log(std::max<double>(n, 2.0));
    const std::size_t smin =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(np / logn)));

    AuditState state;
    std::uint64_t skipped = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = stream_rng(seed, kBijectionStream, t);
        Vertex v = static_cast<Vertex>(rng.next_below(g.vertex_count()));
        std::vector<Vertex> nbrs = g.neighbors(v);
        if (nbrs.size() < 2 * smin) { // no qualifying I, J at this vertex
            ++skipped;
            continue;
        }
        std::size_t smax = nbrs.size() / 2;
        std::size_t s = smin + static_cast<std::size_t>(rng.next_below(smax - smin + 1));
        partial_shuffle(nbrs, 2 * s, rng);
        std::vector<Vertex> sources(nbrs.begin(), nbrs.begin() + s);
        std::vector<Vertex> images(nbrs.begin() + s, nbrs.begin() + 2 * s);
        partial_shuffle(images, images.size() - 1, rng);
        EventWitness w = bijection_witness(g, p, v, sources, images, true,
                                           " trial=" + std::to_string(t));
        state.record(w.margin, w.where, w.observed, w.note);
    }
    EventRecord rec = finish("local_bijection_cap", "sampled", std::move(state));
    rec.aux["skipped_trials"] = static_cast<double>(skipped);
    return rec;
}

EventWitness local_bijection_check(const Graph& g, double p,
                                   const std::vector<std::pair<Vertex, Vertex>>& bijection) {
    std::vector<Vertex> sources, images;
    sources.reserve(bijection.size());
    images.reserve(bijection.size());
    for (auto [s, i] : bijection) {
        sources.push_back(s);
        images.push_back(i);
    }
    // Qualification per the event: I and its image disjoint, image injective,
    // and the common size at least np / log n.
    const double n = g.vertex_count();
    const double np = n * p;
    const double logn = std::log(std::max<double>(n, 2.0));
    std::vector<Vertex> si = sources, ii = images;
    std::sort(si.begin(), si.end());
    std::sort(ii.begin(), ii.end());
    bool injective = std::adjacent_find(ii.begin(), ii.end()) == ii.end();
    std::vector<Vertex> overlap;
    std::set_intersection(si.begin(), si.end(), ii.begin(), ii.end(),
                          std::back_inserter(overlap));
    bool qualifies = injective && overlap.empty() &&
                     static_cast<double>(sources.size()) >= np / logn &&
                     !sources.empty();
    return bijection_witness(g, p, sources.empty() ? 0 : sources.front(), sources, images,
                             qualifies, "");
}

EventRecord audit_cut_edges(const Graph& g, double p, std::uint64_t trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("cut audit needs trials >= 1");
    const double n = g.vertex_count();
    const double np = n * p;
    // (log n / sqrt(np)) |J| np rewritten division-free as log n sqrt(np) |J|.
    const double per_element_allowance = std::log(n) * std::sqrt(np);

    auto check = [&](AuditState& acc, const VertexSet& members, const char* label) {
        VertexSet comp = members.complement();
        std::uint64_t cut = 0;
        for (Vertex v : members.to_vector()) cut += count_in_set(g, v, comp);
        double size = members.count();
        double expected = size * (n - size) * p;
        double margin = std::abs(cut - expected) - per_element_allowance * size;
        acc.record(margin, {}, static_cast<double>(cut),
                   std::string(label) + " |J|=" + std::to_string(members.count()));
    };

    AuditState state = parallel_accumulate(
        0, trials, AuditState{},
        [&](AuditState& acc, std::uint64_t t) {
            Rng rng = stream_rng(seed, kCutStream, t);
            VertexSet members(g.vertex_count());
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                if (rng.next_u64() & 1) members.add(v);
            check(acc, members, "sampled");
        },
        [](AuditState& a, AuditState&& b) { a.merge(std::move(b)); });
    check(state, VertexSet(g.vertex_count()), "empty");
    check(state, VertexSet::full(g.vertex_count()), "all");
    return finish("cut_edge_window", "sampled", std::move(state));
}

TypicalityReport audit_all(const Graph& g, double p, std::uint64_t trials,
                           std::uint64_t seed) {
    TypicalityReport report;
    report.n = g.vertex_count();
    report.p = p;
    report.trials = trials;
    report.seed = seed;
    report.events.push_back(audit_degrees(g, p));
    report.events.push_back(audit_pair_codegree(g, p));
    report.events.push_back(audit_triple_codegree(g, p, seed));
    report.events.push_back(audit_subgraph_edges(g, p, trials, seed));
    report.events.push_back(audit_expansion(g, p, trials, seed));
    report.events.push_back(audit_local_bijection(g, p, trials, seed));
    report.events.push_back(audit_cut_edges(g, p, trials, seed));
    return report;
}

} // namespace sga
