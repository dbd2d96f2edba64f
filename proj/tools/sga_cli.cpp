// Command-line workbench for deck-based graph reconstruction experiments:
// G(n,p) sampling, deck extraction, structural typicality audits,
// neighbourhood-isomorphism diagnostics, exact reassembly search, entropy
// profiles, and deterministic parameter sweeps.
//
// Every run is a pure function of its flags, config file, and seeds; reports
// embed the configuration and version tag and carry no timestamps, so
// identical invocations produce byte-identical output.
//
// Exit codes: 0 success, 1 usage error, 2 input parse error, 3 budget
// exhausted (sweep only, with --strict).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sga/assembly.hpp"
#include "sga/deck.hpp"
#include "sga/diagnostics.hpp"
#include "sga/entropy.hpp"
#include "sga/fingerprint.hpp"
#include "sga/graph.hpp"
#include "sga/parallel.hpp"
#include "sga/report.hpp"
#include "sga/rng.hpp"
#include "sga/typicality.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4; // invariant failure inside the library

// ---------------------------------------------------------------------------
// Flat key-value config: "[section]" headers, "key = value" lines, '#'
// comments. Keys come back as "section.key"; list values stay
// space-separated text.

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && is_space(line.back())) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && is_space(line[start])) ++start;
        line.erase(0, start);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": malformed section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && is_space(key.back())) key.pop_back();
        std::size_t v0 = 0;
        while (v0 < value.size() && is_space(value[v0])) ++v0;
        value.erase(0, v0);
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full))
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": duplicate key " + full);
        out[full] = value;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& key) {
    std::vector<T> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        T value{};
        std::istringstream one(tok);
        one >> value;
        if (one.fail() || one.peek() != EOF)
            throw std::runtime_error("config key " + key + ": bad value '" + tok + "'");
        out.push_back(value);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweep configuration. Every cell of the (n, p) grid runs `trials` sampled
// graphs; trial t of cell c derives its sampler seed as
// mix64(mix64(seeds[t mod |seeds|], c), t), so the whole sweep is a pure
// function of this struct.

struct ExperimentConfig {
    std::vector<std::uint32_t> ns;
    std::vector<double> ps;
    std::vector<std::uint64_t> seeds{1};
    std::uint64_t trials = 10;
    std::uint64_t audit_trials = 2;
    std::uint64_t budget = 20'000'000;
    std::vector<double> epsilons{1.0};
    std::string csv = "-"; // overridden by --out
    std::string dir;       // per-cell JSON reports when non-empty
};

ExperimentConfig load_experiment_config(const std::string& path) {
    const auto kv = parse_config_text(read_file(path));
    for (const auto& [key, value] : kv) {
        (void)value;
        static const char* known[] = {"grid.n",      "grid.p",           "run.trials",
                                      "run.seeds",   "run.audit_trials", "run.budget",
                                      "run.epsilon", "output.csv",       "output.dir"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw std::runtime_error("config: unknown key " + key);
    }
    ExperimentConfig cfg;
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("grid.n")) cfg.ns = parse_list<std::uint32_t>(*v, "grid.n");
    if (const auto* v = get("grid.p")) cfg.ps = parse_list<double>(*v, "grid.p");
    if (const auto* v = get("run.seeds")) cfg.seeds = parse_list<std::uint64_t>(*v, "run.seeds");
    if (const auto* v = get("run.trials"))
        cfg.trials = parse_list<std::uint64_t>(*v, "run.trials").at(0);
    if (const auto* v = get("run.audit_trials"))
        cfg.audit_trials = parse_list<std::uint64_t>(*v, "run.audit_trials").at(0);
    if (const auto* v = get("run.budget"))
        cfg.budget = parse_list<std::uint64_t>(*v, "run.budget").at(0);
    if (const auto* v = get("run.epsilon")) cfg.epsilons = parse_list<double>(*v, "run.epsilon");
    if (const auto* v = get("output.csv")) cfg.csv = *v;
    if (const auto* v = get("output.dir")) cfg.dir = *v;

    if (cfg.ns.empty()) throw std::runtime_error("config: grid.n must list at least one n");
    if (cfg.ps.empty()) throw std::runtime_error("config: grid.p must list at least one p");
    for (auto n : cfg.ns)
        if (n < 1) throw std::runtime_error("config: grid.n entries must be >= 1");
    for (auto p : cfg.ps)
        if (!(p > 0.0 && p <= 1.0))
            throw std::runtime_error("config: grid.p entries must lie in (0,1]");
    if (cfg.seeds.empty()) throw std::runtime_error("config: run.seeds must not be empty");
    if (cfg.trials < 1) throw std::runtime_error("config: run.trials must be >= 1");
    if (cfg.audit_trials < 1) throw std::runtime_error("config: run.audit_trials must be >= 1");
    if (cfg.budget < 1) throw std::runtime_error("config: run.budget must be >= 1");
    for (auto e : cfg.epsilons)
        if (!(e > 0.0 && e <= 1.0))
            throw std::runtime_error("config: run.epsilon entries must lie in (0,1]");
    return cfg;
}

json experiment_config_json(const ExperimentConfig& cfg) {
    json j;
    j["grid"]["n"] = cfg.ns;
    j["grid"]["p"] = cfg.ps;
    j["run"]["seeds"] = cfg.seeds;
    j["run"]["trials"] = cfg.trials;
    j["run"]["audit_trials"] = cfg.audit_trials;
    j["run"]["budget"] = cfg.budget;
    j["run"]["epsilon"] = cfg.epsilons;
    j["output"]["csv"] = cfg.csv;
    j["output"]["dir"] = cfg.dir;
    return j;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(std::uint32_t n, double p, std::uint64_t seed, const std::string& out) {
    const sga::Graph g = sga::sample_gnp(n, p, seed);
    sga::write_text(sga::to_edge_list_text(g), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// deck

int cmd_deck(const std::string& in, sga::DeckMode mode, const std::string& out) {
    const sga::Graph g = sga::read_edge_list(in);
    sga::write_text(sga::to_deck_text(sga::extract_deck(g, mode)), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// audit

int cmd_audit(const std::string& in, double p, std::uint64_t trials, std::uint64_t seed,
              const std::string& out) {
    const sga::Graph g = sga::read_edge_list(in);
    const sga::TypicalityReport rep = sga::audit_all(g, p, trials, seed);
    json j = sga::report_envelope("audit",
                                  {{"in", in}, {"p", p}, {"trials", trials}, {"seed", seed}});
    j["report"] = sga::to_json(rep);
    sga::write_report(j, out);
    return kExitOk; // the report states whether the events hold; it never gates
}

// ---------------------------------------------------------------------------
// diagnose

int cmd_diagnose(const std::string& file_a, const std::string& file_b,
                 const std::string& hints_path, const std::vector<double>& epsilons,
                 std::optional<double> p_override, const std::vector<sga::Vertex>& z_list,
                 std::uint32_t jz_min, const std::string& out) {
    const sga::Graph a = sga::read_edge_list(file_a);
    const sga::Graph b = sga::read_edge_list(file_b);
    for (sga::Vertex z : z_list)
        if (z >= a.vertex_count())
            throw std::invalid_argument("diagnose: --z vertex out of range");
    std::vector<std::optional<sga::VertexMapping>> hints;
    if (!hints_path.empty()) hints = sga::read_hints(hints_path, a.vertex_count());

    json config{{"a", file_a}, {"b", file_b}, {"epsilon", epsilons}};
    if (!hints_path.empty()) config["hints"] = hints_path;
    if (p_override) config["p"] = *p_override;
    if (!z_list.empty()) {
        config["z"] = z_list;
        config["jz_min"] = jz_min;
    }
    json j = sga::report_envelope("diagnose", std::move(config));

    const sga::FamilyBuildResult build =
        sga::build_iso_family(a, b, hints.empty() ? nullptr : &hints);
    j["family"] = sga::family_sources_json(build);
    if (!build.family) {
        // No centre-fixing neighbourhood isomorphism exists at `failed_at`;
        // that is a finding about the pair, not a tool failure.
        sga::write_report(j, out);
        return kExitOk;
    }
    const sga::IsoFamily& family = *build.family;

    const sga::VotePermutation vote = sga::vote_permutation(a, b, family);
    j["vote"] = sga::to_json(vote);
    const sga::MatchedIncidence incidence = sga::e3_margin(a, family);
    j["matched_incidence"] = sga::to_json(incidence);
    const sga::MatchPartition partition = sga::match_partition(a, b, family, p_override);
    j["partition"] = sga::to_json(partition);
    j["mismatch_pair_count"] = sga::mismatch_pairs(a, family, vote.pi).size();

    json per_eps = json::array();
    for (double eps : epsilons) {
        const sga::FocusReport focus = sga::focused_pairs(a, b, family, eps, p_override);
        json e;
        e["epsilon"] = eps;
        e["focus"] = sga::to_json(focus);
        e["e2_holds"] = vote.e2_holds(eps, focus.p);
        e["e3_holds"] = incidence.e3_holds(eps, focus.p);
        per_eps.push_back(std::move(e));
    }
    j["per_epsilon"] = std::move(per_eps);

    json growth = json::array();
    constexpr std::size_t kMaxGrowthVertices = 16;
    for (std::size_t k = 0; k < partition.j_m_complement.size() && k < kMaxGrowthVertices; ++k) {
        const sga::Vertex v = partition.j_m_complement[k];
        json g = sga::to_json(sga::growth_check(a, family, partition, v));
        g["v"] = v;
        g["i_v_size"] = sga::bootstrap_set(a, family, partition, v).size();
        growth.push_back(std::move(g));
    }
    j["growth"] = std::move(growth);

    if (!z_list.empty()) {
        json mg = json::array();
        for (sga::Vertex z : z_list)
            mg.push_back(sga::to_json(
                sga::focus_multigraph(a, b, family, epsilons.at(0), z, jz_min, p_override)));
        j["focus_multigraph"] = std::move(mg);
    }

    sga::write_report(j, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// reconstruct

int cmd_reconstruct_assembly(const std::string& in, const std::string& deck_path,
                             std::uint64_t budget, const std::string& solutions_dir,
                             const std::string& out) {
    sga::Deck deck;
    json config{{"budget", budget}};
    std::optional<sga::Graph> truth;
    if (!in.empty()) {
        truth = sga::read_edge_list(in);
        deck = sga::extract_deck(*truth, sga::DeckMode::Unlabeled);
        config["in"] = in;
    } else {
        deck = sga::read_deck(deck_path);
        config["deck"] = deck_path;
        if (deck.mode != sga::DeckMode::Unlabeled)
            throw std::invalid_argument("reconstruct: assembly needs an unlabeled deck");
    }
    const std::uint32_t n = deck.host_vertex_count;
    config["n"] = n;
    if (!solutions_dir.empty()) config["solutions_dir"] = solutions_dir;

    const sga::AssemblyResult result = sga::exact_assembly(deck, n, budget);
    json j = sga::report_envelope("reconstruct", std::move(config));
    j["result"] = sga::to_json(result);
    if (truth) {
        j["input_code"] = sga::canonical_code(*truth).hex();
        j["unique_up_to_isomorphism"] = result.exhausted && result.solutions.size() == 1;
    }
    if (!solutions_dir.empty()) {
        std::filesystem::create_directories(solutions_dir);
        json files = json::array();
        for (std::size_t k = 0; k < result.solutions.size(); ++k) {
            const std::string path =
                (std::filesystem::path(solutions_dir) / ("solution_" + std::to_string(k) + ".txt"))
                    .string();
            sga::write_edge_list(result.solutions[k], path);
            files.push_back(path);
        }
        j["solution_files"] = std::move(files);
    }
    sga::write_report(j, out);
    return kExitOk; // a budget-capped run reports exhausted=false, still exit 0
}

int cmd_reconstruct_classify(const std::string& in, const std::string& deck_path,
                             const std::string& out) {
    sga::Deck deck;
    json config;
    std::optional<sga::Graph> truth;
    if (!in.empty()) {
        truth = sga::read_edge_list(in);
        deck = sga::extract_deck(*truth, sga::DeckMode::RootedLabeled);
        config["in"] = in;
    } else {
        deck = sga::read_deck(deck_path);
        config["deck"] = deck_path;
        if (deck.mode != sga::DeckMode::RootedLabeled)
            throw std::invalid_argument("reconstruct: --classify needs a rooted_labeled deck");
    }
    const auto verdicts = sga::classify_all_pairs(deck);
    json j = sga::report_envelope("reconstruct", std::move(config));
    j["classify"] = sga::verdict_summary(verdicts, truth ? &*truth : nullptr);
    json undecided = json::array();
    constexpr std::size_t kMaxListed = 64;
    for (const auto& v : verdicts)
        if (v.verdict == sga::Adjacency::Undecided && undecided.size() < kMaxListed)
            undecided.push_back({v.v, v.w});
    j["undecided_pairs"] = std::move(undecided);
    sga::write_report(j, out);
    return kExitOk;
}

int cmd_reconstruct_counterexamples(std::uint32_t n, double p, std::uint64_t trials,
                                    std::uint64_t seed, std::uint64_t budget,
                                    const std::string& pairs_dir, const std::string& out) {
    const auto hits = sga::counterexample_search(n, p, trials, seed, budget);
    json j = sga::report_envelope("reconstruct", {{"counterexamples", true},
                                                  {"n", n},
                                                  {"p", p},
                                                  {"trials", trials},
                                                  {"seed", seed},
                                                  {"budget", budget},
                                                  {"pairs_dir", pairs_dir}});
    j["hit_count"] = hits.size();
    if (!pairs_dir.empty()) std::filesystem::create_directories(pairs_dir);
    json list = json::array();
    for (const auto& hit : hits) {
        json h;
        h["trial"] = hit.trial;
        h["exhausted"] = hit.exhausted;
        if (!pairs_dir.empty()) {
            const auto base =
                std::filesystem::path(pairs_dir) / ("pair_" + std::to_string(hit.trial));
            const std::string file_a = base.string() + "_a.txt";
            const std::string file_b = base.string() + "_b.txt";
            sga::write_edge_list(hit.g, file_a);
            sga::write_edge_list(hit.h, file_b);
            h["a"] = file_a;
            h["b"] = file_b;
        }
        list.push_back(std::move(h));
    }
    j["hits"] = std::move(list);
    sga::write_report(j, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// entropy

constexpr const char* kEntropyCaveat =
    "h_card_upper is a chain-rule upper bound on card entropy, so ratio and "
    "crossover are upper-envelope estimates: ratio < 1 certifies an entropy "
    "deficit for reconstruction from the deck, ratio >= 1 certifies nothing.";

int cmd_entropy(const std::vector<std::uint64_t>& ns, const std::vector<double>& ps,
                bool crossover, const std::string& csv_path, const std::string& out) {
    json j = sga::report_envelope(
        "entropy", {{"n", ns}, {"p", ps}, {"crossover", crossover}, {"csv", csv_path}});
    j["caveat"] = kEntropyCaveat;

    std::vector<sga::EntropyProfile> profiles;
    for (auto n : ns)
        for (auto p : ps) profiles.push_back(sga::entropy_profile(n, p));
    json pj = json::array();
    for (const auto& e : profiles) pj.push_back(sga::to_json(e));
    j["profiles"] = std::move(pj);

    json xj = json::array();
    if (crossover) {
        for (auto n : ns) {
            json row{{"n", n}};
            try {
                row["p_star"] = sga::crossover_p(n);
            } catch (const std::exception& e) {
                // Out-of-range n or a bracket without a crossing is a finding
                // about n; the report records it without failing the run.
                row["error"] = e.what();
            }
            xj.push_back(std::move(row));
        }
    }
    j["crossover"] = std::move(xj);

    if (!csv_path.empty()) {
        std::string csv = "# " + std::string(kEntropyCaveat) + "\n";
        csv += sga::entropy_csv_header() + "\n";
        for (const auto& e : profiles) csv += sga::entropy_csv_row(e) + "\n";
        for (const auto& row : j["crossover"])
            if (row.contains("p_star"))
                csv += "# crossover n=" + row["n"].dump() +
                       " p_star=" + sga::format_double(row["p_star"].get<double>()) + "\n";
        sga::write_text(csv, csv_path);
    }
    sga::write_report(j, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct CellOutcome {
    std::uint32_t n = 0;
    double p = 0.0;
    std::string mode; // enumeration | assembly | none
    std::uint64_t decided = 0;
    std::uint64_t reconstructable = 0;
    std::uint64_t exhausted = 0; // trials that hit the node budget
    std::map<std::string, std::uint64_t> event_holds;
    std::uint64_t all_hold = 0;
    double entropy_ratio = 0.0;
    json cell_report;
};

constexpr const char* kSweepEventColumns[] = {
    "degree_window",        "pair_codegree_window",   "triple_codegree_cap",
    "subgraph_edge_counts", "neighborhood_expansion", "local_bijection_cap",
    "cut_edge_window",
};

CellOutcome run_sweep_cell(const ExperimentConfig& cfg, std::uint64_t cell_index,
                           std::uint32_t n, double p) {
    CellOutcome cell;
    cell.n = n;
    cell.p = p;
    if (n <= sga::kEnumerationMaxVertices) cell.mode = "enumeration";
    else if (n <= sga::kAssemblyMaxVertices) cell.mode = "assembly";
    else cell.mode = "none";

    json trials = json::array();
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed =
            sga::mix64(sga::mix64(cfg.seeds[t % cfg.seeds.size()], cell_index), t);
        const sga::Graph g = sga::sample_gnp(n, p, seed);

        const sga::TypicalityReport audit = sga::audit_all(g, p, cfg.audit_trials, seed);
        json trial{{"trial", t}, {"seed", seed}};
        json events;
        for (const auto& event : audit.events) {
            if (event.holds) ++cell.event_holds[event.name];
            events[event.name] = event.holds;
        }
        trial["audit"] = std::move(events);
        if (audit.all_hold()) ++cell.all_hold;

        if (cell.mode == "enumeration") {
            const bool unique =
                sga::is_reconstructable_bruteforce(g, sga::BruteforceMode::Enumeration);
            ++cell.decided;
            cell.reconstructable += unique ? 1 : 0;
            trial["reconstructable"] = unique;
        } else if (cell.mode == "assembly") {
            try {
                const bool unique =
                    sga::is_reconstructable_bruteforce(g, sga::BruteforceMode::Assembly);
                ++cell.decided;
                cell.reconstructable += unique ? 1 : 0;
                trial["reconstructable"] = unique;
            } catch (const std::runtime_error&) {
                // Node budget hit: recorded for the cell, never fatal.
                ++cell.exhausted;
                trial["reconstructable"] = nullptr;
                trial["budget_exhausted"] = true;
            }
        }
        trials.push_back(std::move(trial));
    }
    cell.entropy_ratio = sga::entropy_profile(n, p).ratio;

    cell.cell_report = json{{"cell", {{"index", cell_index}, {"n", n}, {"p", p}}},
                            {"mode", cell.mode},
                            {"trials", std::move(trials)},
                            {"entropy_ratio", cell.entropy_ratio}};
    return cell;
}

int cmd_sweep(const std::string& config_path, std::string out, bool strict) {
    const ExperimentConfig cfg = load_experiment_config(config_path);
    if (out.empty()) out = cfg.csv;

    // Cells run on the shared pool; the collector below writes strictly in
    // grid order (p varies fastest), so output never depends on scheduling.
    const std::uint64_t cell_count = static_cast<std::uint64_t>(cfg.ns.size()) * cfg.ps.size();
    auto cell_of = [&](std::uint64_t c) {
        return std::pair(cfg.ns[c / cfg.ps.size()], cfg.ps[c % cfg.ps.size()]);
    };
    const std::vector<CellOutcome> cells = sga::parallel_accumulate(
        std::uint64_t{0}, cell_count, std::vector<CellOutcome>{},
        [&](std::vector<CellOutcome>& acc, std::uint64_t c) {
            const auto [n, p] = cell_of(c);
            acc.push_back(run_sweep_cell(cfg, c, n, p));
        },
        [](std::vector<CellOutcome>& into, std::vector<CellOutcome>&& chunk) {
            for (auto& cell : chunk) into.push_back(std::move(cell));
        });

    std::string csv = "# version " + std::string(sga::kVersionTag) + "\n";
    for (const auto& [key, value] : parse_config_text(read_file(config_path)))
        csv += "# config " + key + " = " + value + "\n";
    csv += "n,p,trials,mode,decided,reconstructable_fraction,budget_exhausted,audit_all_rate";
    for (const char* name : kSweepEventColumns) csv += std::string(",") + name + "_rate";
    csv += ",entropy_ratio\n";

    const double trials = static_cast<double>(cfg.trials);
    bool any_exhausted = false;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const CellOutcome& cell = cells[c];
        any_exhausted = any_exhausted || cell.exhausted > 0;
        csv += std::to_string(cell.n) + "," + sga::format_double(cell.p) + "," +
               std::to_string(cfg.trials) + "," + cell.mode + "," +
               std::to_string(cell.decided) + ",";
        csv += cell.decided == 0
                   ? "nan"
                   : sga::format_double(static_cast<double>(cell.reconstructable) /
                                        static_cast<double>(cell.decided));
        csv += "," + std::to_string(cell.exhausted);
        csv += "," + sga::format_double(static_cast<double>(cell.all_hold) / trials);
        for (const char* name : kSweepEventColumns) {
            const auto it = cell.event_holds.find(name);
            const double rate =
                it == cell.event_holds.end() ? 0.0 : static_cast<double>(it->second) / trials;
            csv += "," + sga::format_double(rate);
        }
        csv += "," + sga::format_double(cell.entropy_ratio) + "\n";

        if (!cfg.dir.empty()) {
            std::filesystem::create_directories(cfg.dir);
            json cj = sga::report_envelope("sweep-cell", experiment_config_json(cfg));
            cj.update(cell.cell_report);
            sga::write_report(
                cj, (std::filesystem::path(cfg.dir) / ("cell_" + std::to_string(c) + ".json"))
                        .string());
        }
    }
    sga::write_text(csv, out);
    return strict && any_exhausted ? kExitBudget : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deck-based graph reconstruction workbench"};
    app.set_version_flag("--version", sga::kVersionTag);
    app.require_subcommand(1);
    int rc = kExitOk;

    // --- sample ---
    auto* sample = app.add_subcommand("sample", "sample G(n,p) to an edge-list file");
    std::uint32_t sample_n = 0;
    double sample_p = 0.0;
    std::uint64_t sample_seed = 1;
    std::string sample_out = "-";
    sample->add_option("--n", sample_n, "vertex count")->required()->check(CLI::PositiveNumber);
    sample->add_option("--p", sample_p, "edge probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    sample->add_option("--seed", sample_seed, "sampler seed");
    sample->add_option("--out,-o", sample_out, "output path ('-' = stdout)");
    sample->callback([&] { rc = cmd_sample(sample_n, sample_p, sample_seed, sample_out); });

    // --- deck ---
    auto* deck = app.add_subcommand("deck", "extract the 1-neighbourhood deck of a graph");
    std::string deck_in, deck_out = "-";
    sga::DeckMode deck_mode = sga::DeckMode::Unlabeled;
    deck->add_option("--in,-i", deck_in, "edge-list file")->required();
    deck->add_option("--mode", deck_mode, "deck mode: unlabeled | rooted")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, sga::DeckMode>{{"unlabeled", sga::DeckMode::Unlabeled},
                                                 {"rooted", sga::DeckMode::RootedLabeled}},
            CLI::ignore_case));
    deck->add_option("--out,-o", deck_out, "output path ('-' = stdout)");
    deck->callback([&] { rc = cmd_deck(deck_in, deck_mode, deck_out); });

    // --- audit ---
    auto* audit = app.add_subcommand("audit", "run the structural typicality audits");
    std::string audit_in, audit_out = "-";
    double audit_p = 0.0;
    std::uint64_t audit_trials = 16, audit_seed = 1;
    audit->add_option("--in,-i", audit_in, "edge-list file")->required();
    audit->add_option("--p", audit_p, "design density the audits test against")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    audit->add_option("--trials", audit_trials, "subset samples per sampled audit")
        ->check(CLI::PositiveNumber);
    audit->add_option("--seed", audit_seed, "audit sampling seed");
    audit->add_option("--out,-o", audit_out, "report path ('-' = stdout)");
    audit->callback(
        [&] { rc = cmd_audit(audit_in, audit_p, audit_trials, audit_seed, audit_out); });

    // --- diagnose ---
    auto* diagnose =
        app.add_subcommand("diagnose", "neighbourhood-isomorphism diagnostics for a graph pair");
    std::string diag_a, diag_b, diag_hints, diag_out = "-";
    std::vector<double> diag_eps{1.0};
    double diag_p = -1.0;
    std::vector<sga::Vertex> diag_z;
    std::uint32_t diag_jz_min = 0;
    diagnose->add_option("--a", diag_a, "first edge-list file")->required();
    diagnose->add_option("--b", diag_b, "second edge-list file")->required();
    diagnose->add_option("--hints", diag_hints,
                         "per-centre map hints file ('centre source image', 1-based)");
    diagnose->add_option("--eps", diag_eps, "epsilon list")
        ->delimiter(',')
        ->check(CLI::Range(1e-9, 1.0));
    diagnose->add_option("--p", diag_p, "density override (default: empirical density)")
        ->check(CLI::Range(0.0, 1.0));
    diagnose->add_option("--z", diag_z, "vertices whose focus multigraph to report")
        ->delimiter(',');
    diagnose->add_option("--jz-min", diag_jz_min, "minimum |M_z(i)| for J_z membership");
    diagnose->add_option("--out,-o", diag_out, "report path ('-' = stdout)");
    diagnose->callback([&] {
        rc = cmd_diagnose(diag_a, diag_b, diag_hints, diag_eps,
                          diag_p < 0 ? std::nullopt : std::optional<double>(diag_p), diag_z,
                          diag_jz_min, diag_out);
    });

    // --- reconstruct ---
    auto* reconstruct = app.add_subcommand(
        "reconstruct", "exact reassembly, deck-only classification, deck-collision search");
    std::string rec_in, rec_deck, rec_dir, rec_pairs_dir, rec_out = "-";
    std::uint64_t rec_budget = 20'000'000, rec_trials = 100, rec_seed = 1;
    std::uint32_t rec_n = 9;
    double rec_p = 0.25;
    bool rec_classify = false, rec_counter = false;
    auto* rec_in_opt = reconstruct->add_option("--in,-i", rec_in, "edge-list file");
    auto* rec_deck_opt = reconstruct->add_option("--deck", rec_deck, "deck file");
    rec_in_opt->excludes(rec_deck_opt);
    reconstruct->add_option("--budget", rec_budget, "search-node budget per instance")
        ->check(CLI::PositiveNumber);
    reconstruct->add_flag("--classify", rec_classify,
                          "deck-only pairwise adjacency classification");
    reconstruct->add_flag("--counterexamples", rec_counter,
                          "sample G(n,p) and report deck collisions");
    reconstruct->add_option("--n", rec_n, "counterexample search: vertex count")
        ->check(CLI::PositiveNumber);
    reconstruct->add_option("--p", rec_p, "counterexample search: edge probability")
        ->check(CLI::Range(0.0, 1.0));
    reconstruct->add_option("--trials", rec_trials, "counterexample search: samples")
        ->check(CLI::PositiveNumber);
    reconstruct->add_option("--seed", rec_seed, "counterexample search: seed");
    reconstruct->add_option("--solutions-dir", rec_dir, "write solution edge lists here");
    reconstruct->add_option("--pairs-dir", rec_pairs_dir, "write counterexample pairs here");
    reconstruct->add_option("--out,-o", rec_out, "report path ('-' = stdout)");
    reconstruct->callback([&] {
        if (rec_counter) {
            rc = cmd_reconstruct_counterexamples(rec_n, rec_p, rec_trials, rec_seed, rec_budget,
                                                 rec_pairs_dir, rec_out);
            return;
        }
        if (rec_in.empty() == rec_deck.empty())
            throw CLI::ValidationError("reconstruct: exactly one of --in / --deck is required");
        rc = rec_classify
                 ? cmd_reconstruct_classify(rec_in, rec_deck, rec_out)
                 : cmd_reconstruct_assembly(rec_in, rec_deck, rec_budget, rec_dir, rec_out);
    });

    // --- entropy ---
    auto* entropy = app.add_subcommand("entropy", "entropy profiles and the ratio crossover");
    std::vector<std::uint64_t> ent_ns;
    std::vector<double> ent_ps;
    bool ent_crossover = false;
    std::string ent_csv, ent_out = "-";
    entropy->add_option("--n", ent_ns, "vertex counts")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    entropy->add_option("--p", ent_ps, "densities")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    entropy->add_flag("--crossover", ent_crossover, "locate the ratio = 1 density per n");
    entropy->add_option("--csv", ent_csv, "also write profile rows as CSV");
    entropy->add_option("--out,-o", ent_out, "report path ('-' = stdout)");
    entropy->callback([&] { rc = cmd_entropy(ent_ns, ent_ps, ent_crossover, ent_csv, ent_out); });

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "deterministic grid sweep driven by a config file");
    std::string sweep_config, sweep_out;
    bool sweep_strict = false;
    sweep->add_option("--config,-c", sweep_config, "flat key-value config file")->required();
    sweep->add_option("--out,-o", sweep_out, "CSV path (default from config, '-' = stdout)");
    sweep->add_flag("--strict", sweep_strict, "exit 3 when any trial hit the node budget");
    sweep->callback([&] { rc = cmd_sweep(sweep_config, sweep_out, sweep_strict); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return rc;
}
