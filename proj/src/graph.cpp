#include "sga/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sga/rng.hpp"

namespace sga {

std::uint32_t VertexSet::count() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

bool VertexSet::empty() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

std::vector<Vertex> VertexSet::to_vector() const {
    std::vector<Vertex> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        std::uint64_t w = words_[wi];
        while (w) {
            out.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

VertexSet VertexSet::complement() const {
    VertexSet out(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    if (n_ & 63) out.words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    return out;
}

VertexSet VertexSet::full(std::uint32_t n) { return VertexSet(n).complement(); }

VertexSet VertexSet::of(std::uint32_t n, std::initializer_list<Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.add(v);
    return s;
}

VertexSet VertexSet::of(std::uint32_t n, std::span<const Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.add(v);
    return s;
}

Graph::Graph(std::uint32_t n) : n_(n), words_((n + 63) / 64) {
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    if (n > kMaxVertices) throw std::invalid_argument("vertex count exceeds the supported cap");
    bits_.assign(std::size_t{n_} * words_, 0);
}

void Graph::add_edge(Vertex u, Vertex v) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    bits_[std::size_t{u} * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    bits_[std::size_t{v} * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

std::uint32_t Graph::degree(Vertex v) const {
    std::uint32_t c = 0;
    for (std::uint64_t w : row(v)) c += std::popcount(w);
    return c;
}

std::uint64_t Graph::edge_count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c / 2;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    auto r = row(v);
    for (std::size_t wi = 0; wi < r.size(); ++wi) {
        std::uint64_t w = r[wi];
        while (w) {
            out.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

VertexSet Graph::neighbor_set(Vertex v) const {
    VertexSet s(n_);
    auto r = row(v);
    std::copy(r.begin(), r.end(), s.words().begin());
    return s;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (v > u) out.emplace_back(u, v);
    return out;
}

std::vector<std::uint32_t> Graph::degree_sequence_sorted() const {
    std::vector<std::uint32_t> d(n_);
    for (Vertex v = 0; v < n_; ++v) d[v] = degree(v);
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
    Graph out(n_);
    std::vector<Vertex> inv(n_);
    for (Vertex a = 0; a < n_; ++a) inv[perm[a]] = a;
    for (auto [u, v] : edges()) out.add_edge(inv[u], inv[v]);
    return out;
}

bool Graph::check_invariants() const {
    std::uint64_t popsum = 0;
    for (Vertex v = 0; v < n_; ++v) {
        if (has_edge(v, v)) return false;
        popsum += degree(v);
        for (Vertex u : neighbors(v))
            if (!has_edge(u, v)) return false;
    }
    return popsum == 2 * edge_count();
}

Graph sample_gnp(std::uint32_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
    Graph g(n);
    if (p == 0.0) return g;
    // Row-major counter: pair (u,v), u<v, sits at u*(n-1) - u*(u-1)/2 + (v-u-1).
    for (Vertex u = 0; u < n; ++u) {
        const std::uint64_t base =
            std::uint64_t{u} * (n - 1) - (std::uint64_t{u} * (u ? u - 1 : 0)) / 2 - u;
        for (Vertex v = u + 1; v < n; ++v) {
            if (uniform01(seed, base + v - 1) < p) g.add_edge(u, v);
        }
    }
    return g;
}

Graph from_edge_list(std::uint32_t n,
                     std::span<const std::pair<std::uint32_t, std::uint32_t>> edges_1based) {
    Graph g(n);
    for (auto [u, v] : edges_1based) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("edge endpoint out of [1,n]");
        if (u == v) throw std::invalid_argument("loop edge rejected");
        g.add_edge(u - 1, v - 1);
    }
    return g;
}

RootedGraph neighborhood(const Graph& g, Vertex v, std::uint32_t r) {
    if (v >= g.vertex_count()) throw std::invalid_argument("neighborhood root out of range");
    if (r < 1) throw std::invalid_argument("neighborhood radius must be >= 1");
    VertexSet ball(g.vertex_count());
    ball.add(v);
    // Breadth-first ball; r=1 is a single union with the adjacency row.
    std::vector<Vertex> frontier{v};
    for (std::uint32_t step = 0; step < r && !frontier.empty(); ++step) {
        std::vector<Vertex> next;
        for (Vertex u : frontier)
            for (Vertex w : g.neighbors(u))
                if (!ball.contains(w)) {
                    ball.add(w);
                    next.push_back(w);
                }
        frontier = std::move(next);
    }
    std::vector<Vertex> ids = ball.to_vector();
    Graph sub(static_cast<std::uint32_t>(ids.size()));
    for (std::uint32_t a = 0; a < ids.size(); ++a)
        for (std::uint32_t b = a + 1; b < ids.size(); ++b)
            if (g.has_edge(ids[a], ids[b])) sub.add_edge(a, b);
    Vertex root_local =
        static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    return RootedGraph{std::move(sub), root_local, std::move(ids)};
}

VertexSet common_neighbors(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.vertex_count()) throw std::invalid_argument("vertex set universe mismatch");
    if (s.empty()) throw std::invalid_argument("common_neighbors needs a nonempty set");
    VertexSet acc = VertexSet::full(g.vertex_count());
    for (Vertex v : s.to_vector()) acc &= g.neighbor_set(v);
    for (Vertex v : s.to_vector()) acc.remove(v);
    return acc;
}

std::uint64_t edges_between(const Graph& g, const VertexSet& j) {
    if (j.universe() != g.vertex_count()) throw std::invalid_argument("vertex set universe mismatch");
    std::uint64_t c = 0;
    auto jw = j.words();
    for (Vertex v : j.to_vector()) {
        auto row = g.row(v);
        for (std::size_t i = 0; i < row.size(); ++i) c += std::popcount(row[i] & ~jw[i]);
    }
    return c;
}

std::uint64_t edges_within(const Graph& g, const VertexSet& j) {
    if (j.universe() != g.vertex_count()) throw std::invalid_argument("vertex set universe mismatch");
    std::uint64_t c = 0;
    auto jw = j.words();
    for (Vertex v : j.to_vector()) {
        auto row = g.row(v);
        for (std::size_t i = 0; i < row.size(); ++i) c += std::popcount(row[i] & jw[i]);
    }
    return c / 2;
}

std::string to_edge_list_text(const Graph& g) {
    std::ostringstream out;
    auto es = g.edges();
    out << g.vertex_count() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) out << (u + 1) << ' ' << (v + 1) << '\n';
    return out.str();
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << to_edge_list_text(g);
}

namespace {

bool parse_u32(const std::string& tok, std::uint32_t& out) {
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
}

} // namespace

Graph parse_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> std::runtime_error {
        return std::runtime_error("edge list line " + std::to_string(lineno) + ": " + what);
    };
    std::uint32_t n = 0, m = 0;
    bool have_header = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a)) continue; // blank or comment-only line
        if (!(ls >> b)) throw fail("expected two integers");
        std::string extra;
        if (ls >> extra) throw fail("trailing token '" + extra + "'");
        std::uint32_t x, y;
        if (!parse_u32(a, x) || !parse_u32(b, y)) throw fail("not an integer");
        if (!have_header) {
            n = x;
            m = y;
            have_header = true;
            if (n == 0) throw fail("vertex count must be positive");
        } else {
            edges.emplace_back(x, y);
        }
    }
    if (!have_header) throw std::runtime_error("edge list: missing 'n m' header");
    if (edges.size() != m)
        throw std::runtime_error("edge list: header promises " + std::to_string(m) +
                                 " edges, found " + std::to_string(edges.size()));
    try {
        return from_edge_list(n, edges);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("edge list: ") + e.what());
    }
}

Graph read_edge_list(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_edge_list_text(ss.str());
}

} // namespace sga
