#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sga/assembly.hpp"
#include "sga/diagnostics.hpp"
#include "sga/entropy.hpp"
#include "sga/fingerprint.hpp"
#include "sga/typicality.hpp"

namespace sga {

// Version tag embedded in every report.
inline constexpr const char* kVersionTag = "sga 0.1.0";

// Report envelope: version tag + subcommand name + echoed configuration.
// Reports carry no timestamps; identical inputs give byte-identical output.
nlohmann::json report_envelope(const std::string& command, nlohmann::json config);

// ---- typicality ------------------------------------------------------------
nlohmann::json to_json(const EventWitness& w);
nlohmann::json to_json(const EventRecord& r);
nlohmann::json to_json(const TypicalityReport& r);

// ---- diagnostics -----------------------------------------------------------
nlohmann::json to_json(const FocusedPair& fp);
// max_pairs caps the embedded pair listing (the counts always cover all pairs).
nlohmann::json to_json(const FocusReport& r, std::size_t max_pairs = 64);
nlohmann::json to_json(const FocusMultigraphReport& r);
nlohmann::json to_json(const VotePermutation& v);
nlohmann::json to_json(const MatchedIncidence& m);
nlohmann::json to_json(const MatchPartition& m, std::size_t max_pairs = 64);
nlohmann::json to_json(const GrowthCheck& g);
nlohmann::json family_sources_json(const FamilyBuildResult& r);

// ---- reconstruction --------------------------------------------------------
// Solutions are embedded as canonical-code hex strings.
nlohmann::json to_json(const AssemblyResult& r);
nlohmann::json to_json(const AdjacencyVerdict& v);

// Tally of deck-only adjacency verdicts, optionally scored against the host
// graph that produced the deck (accuracy over decided pairs + coverage).
nlohmann::json verdict_summary(const std::vector<AdjacencyVerdict>& verdicts,
                               const Graph* truth = nullptr);

// ---- entropy ---------------------------------------------------------------
nlohmann::json to_json(const EntropyProfile& e);

// CSV row "n,p,h_graph,h_card_upper,ratio" (h_graph is the unlabeled value,
// the denominator of the ratio). Shortest round-trip formatting.
std::string entropy_csv_header();
std::string entropy_csv_row(const EntropyProfile& e);

// Shortest decimal form that round-trips, locale-independent.
std::string format_double(double x);

// ---- output ----------------------------------------------------------------
// Two-space indent, sorted keys (the library default), trailing newline.
std::string render_report(const nlohmann::json& report);
// path "-" writes to stdout. Throws std::runtime_error on unwritable paths.
void write_report(const nlohmann::json& report, const std::string& path);
void write_text(const std::string& text, const std::string& path);

} // namespace sga
