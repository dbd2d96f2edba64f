#include "sga/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <system_error>

namespace sga {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

nlohmann::json pair_list(const std::vector<std::pair<Vertex, Vertex>>& pairs,
                         std::size_t max_pairs) {
    nlohmann::json out = nlohmann::json::array();
    const std::size_t keep = std::min(pairs.size(), max_pairs);
    for (std::size_t k = 0; k < keep; ++k)
        out.push_back({pairs[k].first, pairs[k].second});
    return out;
}

const char* source_name(FamilyMapSource s) {
    switch (s) {
        case FamilyMapSource::Hint: return "hint";
        case FamilyMapSource::Identity: return "identity";
        case FamilyMapSource::Search: return "search";
    }
    return "?";
}

const char* verdict_name(Adjacency a) {
    switch (a) {
        case Adjacency::Adjacent: return "adjacent";
        case Adjacency::NonAdjacent: return "non-adjacent";
        case Adjacency::Undecided: return "undecided";
    }
    return "?";
}

} // namespace

nlohmann::json report_envelope(const std::string& command, nlohmann::json config) {
    nlohmann::json j;
    j["version"] = kVersionTag;
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

// ---- typicality ------------------------------------------------------------

nlohmann::json to_json(const EventWitness& w) {
    nlohmann::json j;
    j["where"] = w.where;
    j["observed"] = w.observed;
    j["margin"] = w.margin;
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

nlohmann::json to_json(const EventRecord& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["holds"] = r.holds;
    if (r.worst_margin) j["worst_margin"] = *r.worst_margin;
    j["mode"] = r.mode;
    j["checks"] = r.checks;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : r.witnesses) ws.push_back(to_json(w));
    j["witnesses"] = std::move(ws);
    if (!r.aux.empty()) j["aux"] = r.aux;
    return j;
}

nlohmann::json to_json(const TypicalityReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["all_hold"] = r.all_hold();
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : r.events) events.push_back(to_json(e));
    j["events"] = std::move(events);
    return j;
}

// ---- diagnostics -----------------------------------------------------------

nlohmann::json to_json(const FocusedPair& fp) {
    nlohmann::json j;
    j["pair"] = {fp.v, fp.w};
    j["focus"] = {fp.x, fp.y};
    j["support"] = fp.support;
    j["containers"] = fp.containers;
    return j;
}

nlohmann::json to_json(const FocusReport& r, std::size_t max_pairs) {
    nlohmann::json j;
    j["epsilon"] = r.epsilon;
    j["p"] = r.p;
    j["support_required"] = r.support_required;
    j["sub_threshold"] = r.sub_threshold;
    j["pair_count"] = r.pair_count;
    j["focused_count"] = r.focused_count;
    j["a_count"] = r.a_count;
    j["a1_count"] = r.a1_count;
    j["s_a1_count"] = r.s_a1_count;
    j["e1_holds"] = r.e1_holds;
    nlohmann::json fs = nlohmann::json::array();
    const std::size_t keep = std::min(r.focused.size(), max_pairs);
    for (std::size_t k = 0; k < keep; ++k) fs.push_back(to_json(r.focused[k]));
    j["focused"] = std::move(fs);
    j["focused_truncated"] = r.focused.size() > keep;
    return j;
}

nlohmann::json to_json(const FocusMultigraphReport& r) {
    nlohmann::json j;
    j["z"] = r.z;
    j["jz_size"] = r.jz_size;
    j["total_multiplicity"] = r.total_multiplicity;
    j["cross_pairs"] = r.cross_pairs;
    return j;
}

nlohmann::json to_json(const VotePermutation& v) {
    nlohmann::json j;
    j["pi"] = v.pi;
    nlohmann::json prime = nlohmann::json::array();
    for (const auto& o : v.pi_prime)
        prime.push_back(o ? nlohmann::json(*o) : nlohmann::json());
    j["pi_prime"] = std::move(prime);
    j["share"] = v.share;
    std::uint32_t core = 0;
    for (bool b : v.in_core) core += b ? 1 : 0;
    j["core_size"] = core;
    j["votes_for_pi"] = v.votes_for_pi;
    bool identity = true;
    for (std::size_t z = 0; z < v.pi.size(); ++z)
        if (v.pi[z] != static_cast<Vertex>(z)) { identity = false; break; }
    j["is_identity"] = identity;
    return j;
}

nlohmann::json to_json(const MatchedIncidence& m) {
    nlohmann::json j;
    j["count"] = m.count;
    j["n"] = m.n;
    return j;
}

nlohmann::json to_json(const MatchPartition& m, std::size_t max_pairs) {
    nlohmann::json j;
    j["p_count"] = m.p_count;
    j["matched_count"] = m.matched.size();
    j["matched"] = pair_list(m.matched, max_pairs);
    j["matched_truncated"] = m.matched.size() > max_pairs;
    j["verified_count"] = m.verified.size();
    j["j_m_size"] = m.j_m.count();
    j["j_m_complement"] = m.j_m_complement;
    j["v_threshold"] = m.v_threshold;
    j["j_m_threshold"] = m.j_m_threshold;
    j["implication_violations"] = pair_list(m.implication_violations, max_pairs);
    j["implication_violation_count"] = m.implication_violations.size();
    return j;
}

nlohmann::json to_json(const GrowthCheck& g) {
    nlohmann::json j;
    j["e_v_size"] = g.e_v_size;
    j["union_size"] = g.union_size;
    j["meets_growth"] = g.meets_growth;
    return j;
}

nlohmann::json family_sources_json(const FamilyBuildResult& r) {
    nlohmann::json j;
    j["built"] = r.family.has_value();
    if (r.failed_at) j["failed_at"] = *r.failed_at;
    std::uint32_t hints = 0, identity = 0, search = 0;
    nlohmann::json per = nlohmann::json::array();
    for (auto s : r.sources) {
        per.push_back(source_name(s));
        if (s == FamilyMapSource::Hint) ++hints;
        else if (s == FamilyMapSource::Identity) ++identity;
        else ++search;
    }
    j["sources"] = std::move(per);
    j["source_counts"] = {{"hint", hints}, {"identity", identity}, {"search", search}};
    return j;
}

// ---- reconstruction --------------------------------------------------------

nlohmann::json to_json(const AssemblyResult& r) {
    nlohmann::json j;
    j["solution_count"] = r.solutions.size();
    j["exhausted"] = r.exhausted;
    j["nodes_explored"] = r.nodes_explored;
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& g : r.solutions) sols.push_back(canonical_code(g).hex());
    j["solutions"] = std::move(sols);
    return j;
}

nlohmann::json to_json(const AdjacencyVerdict& v) {
    nlohmann::json j;
    j["pair"] = {v.v, v.w};
    j["verdict"] = verdict_name(v.verdict);
    if (v.evidence) j["evidence"] = v.evidence->hex();
    return j;
}

nlohmann::json verdict_summary(const std::vector<AdjacencyVerdict>& verdicts,
                               const Graph* truth) {
    std::uint64_t adjacent = 0, non_adjacent = 0, undecided = 0;
    std::uint64_t correct = 0;
    for (const auto& v : verdicts) {
        switch (v.verdict) {
            case Adjacency::Adjacent: ++adjacent; break;
            case Adjacency::NonAdjacent: ++non_adjacent; break;
            case Adjacency::Undecided: ++undecided; break;
        }
        if (truth && v.verdict != Adjacency::Undecided) {
            const bool is_edge = truth->has_edge(v.v, v.w);
            const bool said_edge = v.verdict == Adjacency::Adjacent;
            if (is_edge == said_edge) ++correct;
        }
    }
    nlohmann::json j;
    j["pairs"] = verdicts.size();
    j["adjacent"] = adjacent;
    j["non_adjacent"] = non_adjacent;
    j["undecided"] = undecided;
    const std::uint64_t decided = adjacent + non_adjacent;
    j["coverage"] = verdicts.empty()
                        ? 1.0
                        : static_cast<double>(decided) / static_cast<double>(verdicts.size());
    if (truth) {
        j["decided_correct"] = correct;
        j["accuracy_on_decided"] =
            decided == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(decided);
    }
    return j;
}

// ---- entropy ---------------------------------------------------------------

nlohmann::json to_json(const EntropyProfile& e) {
    nlohmann::json j;
    j["n"] = e.n;
    j["p"] = e.p;
    j["h_graph_labeled"] = e.h_graph_labeled;
    j["h_graph_unlabeled"] = e.h_graph_unlabeled;
    j["h_card_upper"] = e.h_card_upper;
    j["ratio"] = e.ratio;
    j["regime_ok"] = e.regime_ok;
    return j;
}

std::string entropy_csv_header() { return "n,p,h_graph,h_card_upper,ratio"; }

std::string entropy_csv_row(const EntropyProfile& e) {
    std::string row = std::to_string(e.n);
    row += ',';
    row += format_double(e.p);
    row += ',';
    row += format_double(e.h_graph_unlabeled);
    row += ',';
    row += format_double(e.h_card_upper);
    row += ',';
    row += format_double(e.ratio);
    return row;
}

// ---- output ----------------------------------------------------------------

std::string render_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

void write_text(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_report(const nlohmann::json& report, const std::string& path) {
    write_text(render_report(report), path);
}

} // namespace sga
