#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sga/graph.hpp"
#include "sga/report.hpp"
#include "sga/typicality.hpp"

using namespace sga;

namespace {

Graph complete(std::uint32_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

double degree_margin(const Graph& g, double p) {
    const double n = g.vertex_count();
    const double allowance = std::log(n) * std::sqrt(n * p);
    double worst = -1e300;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        worst = std::max(worst, std::abs(g.degree(v) + 1.0 - n * p) - allowance);
    return worst;
}

double pair_margin(const Graph& g, double p) {
    const double n = g.vertex_count();
    const double np2 = n * p * p;
    const double shrink = std::pow(std::log(n), -kLogWindowExponent);
    double worst = -1e300;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex w = v + 1; w < g.vertex_count(); ++w) {
            VertexSet both = g.neighbor_set(v);
            both &= g.neighbor_set(w);
            const double count = both.count();
            worst = std::max(worst, std::max(count - (1.0 + shrink) * np2,
                                             (1.0 - shrink) * np2 - count));
        }
    return worst;
}

double triple_margin(const Graph& g, double p) {
    const double bound = g.vertex_count() * p * p / 10.0;
    double worst = -1e300;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex w = v + 1; w < g.vertex_count(); ++w)
            for (Vertex u = w + 1; u < g.vertex_count(); ++u) {
                VertexSet all = g.neighbor_set(v);
                all &= g.neighbor_set(w);
                all &= g.neighbor_set(u);
                worst = std::max(worst, all.count() - bound);
            }
    return worst;
}

} // namespace

TEST_CASE("degree window: margins follow the documented formula") {
    // complete graph at p = 1: every closed neighbourhood is exactly np
    const EventRecord exact = audit_degrees(complete(50), 1.0);
    CHECK(exact.holds);
    CHECK(exact.mode == "full");
    CHECK(exact.checks == 50);
    REQUIRE(exact.worst_margin.has_value());
    CHECK(*exact.worst_margin == doctest::Approx(-std::log(50.0) * std::sqrt(50.0)).epsilon(1e-12));

    // an edgeless graph audited against p = 0.5 is far outside the window
    const EventRecord off = audit_degrees(Graph(100), 0.5);
    CHECK_FALSE(off.holds);
    REQUIRE(off.worst_margin.has_value());
    CHECK(*off.worst_margin == doctest::Approx(49.0 - std::log(100.0) * std::sqrt(50.0)).epsilon(1e-12));
    CHECK(off.aux.count("worst_margin_raw_degree") == 1);

    // a genuine sample stays inside, and the margin matches a naive recount
    const Graph g = sample_gnp(150, 0.3, 7);
    const EventRecord rec = audit_degrees(g, 0.3);
    CHECK(rec.holds);
    REQUIRE(rec.worst_margin.has_value());
    CHECK(*rec.worst_margin == doctest::Approx(degree_margin(g, 0.3)).epsilon(1e-12));

    CHECK_THROWS_AS(audit_degrees(g, 0.0), std::invalid_argument);
}

TEST_CASE("violations surface as positive margins with bounded witnesses") {
    const EventRecord off = audit_degrees(Graph(100), 0.5);
    REQUIRE_FALSE(off.holds);
    CHECK(off.witnesses.size() <= kMaxWitnesses);
    REQUIRE_FALSE(off.witnesses.empty());
    // the top witness carries the worst margin
    double top = -1e300;
    for (const auto& w : off.witnesses) top = std::max(top, w.margin);
    CHECK(top == *off.worst_margin);
    CHECK(top > 0.0);
}

TEST_CASE("pair codegree window matches a naive recount") {
    const Graph g = sample_gnp(150, 0.3, 7);
    const EventRecord rec = audit_pair_codegree(g, 0.3);
    CHECK(rec.mode == "full");
    CHECK(rec.checks == 150ull * 149 / 2);
    REQUIRE(rec.worst_margin.has_value());
    CHECK(*rec.worst_margin == doctest::Approx(pair_margin(g, 0.3)).epsilon(1e-12));

    // one-vertex graph: no pairs to check, vacuously holds
    const EventRecord empty = audit_pair_codegree(Graph(1), 0.5);
    CHECK(empty.holds);
    CHECK(empty.checks == 0);
    CHECK_FALSE(empty.worst_margin.has_value());
}

TEST_CASE("triple codegree cap: full scan below the size cutoff") {
    const Graph g = sample_gnp(60, 0.4, 5);
    const EventRecord rec = audit_triple_codegree(g, 0.4);
    CHECK(rec.mode == "full");
    CHECK(rec.checks == 60ull * 59 * 58 / 6);
    REQUIRE(rec.worst_margin.has_value());
    CHECK(*rec.worst_margin == doctest::Approx(triple_margin(g, 0.4)).epsilon(1e-12));

    // a complete graph violates the cap: every triple has n - 3 commons
    const EventRecord hot = audit_triple_codegree(complete(30), 1.0);
    CHECK_FALSE(hot.holds);
    CHECK(*hot.worst_margin == doctest::Approx(27.0 - 3.0).epsilon(1e-12));
}

TEST_CASE("triple codegree cap: uniform sample beyond the cutoff") {
    const Graph g = sample_gnp(kTripleFullScanMax + 1, 0.02, 3);
    const EventRecord rec = audit_triple_codegree(g, 0.02, 11);
    CHECK(rec.mode == "sampled");
    CHECK(rec.checks == kTripleSampleCount);
    // sampling is a pure function of the seed
    const EventRecord again = audit_triple_codegree(g, 0.02, 11);
    CHECK(to_json(rec).dump() == to_json(again).dump());
}

TEST_CASE("subgraph edge counts audit") {
    const Graph g = sample_gnp(120, 0.25, 9);
    const EventRecord rec = audit_subgraph_edges(g, 0.25, 3, 1);
    CHECK(rec.name == "subgraph_edge_counts");
    CHECK(rec.holds); // allowance 8 n^{3/2} p^2 is generous at this scale
    CHECK(rec.checks >= 120 * 2); // every vertex contributes empty + full
    CHECK_THROWS_AS(audit_subgraph_edges(g, 0.25, 0, 1), std::invalid_argument);
}

TEST_CASE("expansion and local-bijection audits run and are seeded") {
    const Graph g = sample_gnp(120, 0.3, 4);
    const EventRecord ex = audit_expansion(g, 0.3, 2, 5);
    CHECK(ex.name == "neighborhood_expansion");
    CHECK(ex.mode == "sampled");
    CHECK(to_json(ex).dump() == to_json(audit_expansion(g, 0.3, 2, 5)).dump());

    const EventRecord lb = audit_local_bijection(g, 0.3, 2, 6);
    CHECK(lb.name == "local_bijection_cap");
    CHECK(to_json(lb).dump() == to_json(audit_local_bijection(g, 0.3, 2, 6)).dump());

    CHECK_THROWS_AS(audit_expansion(g, 0.3, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(audit_local_bijection(g, 0.3, 0, 1), std::invalid_argument);
}

TEST_CASE("explicit local-bijection replay on a hand case") {
    // hub 0 over {1,2,3,4}; extra edges {1,2} and {3,4}; mapping 1->3, 2->4
    Graph g(5);
    for (Vertex v = 1; v < 5; ++v) g.add_edge(0, v);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    const EventWitness w = local_bijection_check(g, 0.5, {{1, 3}, {2, 4}});
    CHECK(w.observed == doctest::Approx(1.0)); // {1,2} and its image {3,4} are both edges
    CHECK(w.margin == doctest::Approx(1.0 - 0.001 * (4.0 / 2.0) * 0.5).epsilon(1e-12));
    CHECK_FALSE(w.note.empty());
}

TEST_CASE("cut edges audit") {
    const Graph g = sample_gnp(200, 0.3, 13);
    const EventRecord rec = audit_cut_edges(g, 0.3, 16, 2);
    CHECK(rec.name == "cut_edge_window");
    CHECK(rec.holds);
    // the empty subset is always audited and sits exactly on the boundary
    REQUIRE(rec.worst_margin.has_value());
    CHECK(*rec.worst_margin == 0.0);
    CHECK(rec.checks == 16 + 2);

    // auditing against a wildly wrong density breaks the window
    const Graph sparse = sample_gnp(400, 0.2, 3);
    const EventRecord off = audit_cut_edges(sparse, 0.9, 16, 2);
    CHECK_FALSE(off.holds);

    CHECK_THROWS_AS(audit_cut_edges(g, 0.3, 0, 1), std::invalid_argument);
}

TEST_CASE("bernstein tail formula and monotonicity") {
    CHECK(bernstein_tail(100, 0.1, 3.0) ==
          doctest::Approx(2.0 * std::exp(-(4.5) / (10.0 + 3.0))).epsilon(1e-12));
    CHECK(bernstein_tail(100, 0.1, 6.0) < bernstein_tail(100, 0.1, 3.0));
    CHECK(bernstein_tail(50, 0.5, 1e-9) <= 2.0);
}

TEST_CASE("audit_all runs the full battery deterministically") {
    const Graph g = sample_gnp(120, 0.25, 9);
    const TypicalityReport rep = audit_all(g, 0.25, 2, 42);
    CHECK(rep.n == 120);
    CHECK(rep.p == 0.25);
    CHECK(rep.seed == 42);
    REQUIRE(rep.events.size() == 7);
    const char* names[] = {"degree_window",       "pair_codegree_window", "triple_codegree_cap",
                           "subgraph_edge_counts", "neighborhood_expansion",
                           "local_bijection_cap", "cut_edge_window"};
    for (const char* name : names) CHECK(rep.find(name) != nullptr);
    CHECK(rep.find("missing_event") == nullptr);

    bool conj = true;
    for (const auto& e : rep.events) conj = conj && e.holds;
    CHECK(rep.all_hold() == conj);

    const TypicalityReport again = audit_all(g, 0.25, 2, 42);
    CHECK(to_json(rep).dump() == to_json(again).dump());
}
