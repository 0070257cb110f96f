#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "pogona/analysis.hpp"
#include "pogona/eval.hpp"
#include "pogona/synthgen.hpp"

namespace pogona {

// All JSON goes through nlohmann::json, whose objects keep keys sorted, so
// every document has a stable key order. Absent statistics become null.

nlohmann::json config_to_json(const RunConfig& cfg);
nlohmann::json analysis_to_json(const AnalysisOutput& out);
nlohmann::json eval_to_json(const EvalReport& rep);
nlohmann::json expected_to_json(const GeneratedScenario& gen);

/// `<behaviour> <start_frame> <end_frame> <duration_s>` per episode.
std::string events_text(const AnalysisOutput& out);

/// One JSON object per frame, one per line.
std::string frames_jsonl(const AnalysisOutput& out);

/// Aligned table with the class rows, overall row, F1 sweep and confusion
/// matrix of an evaluation.
std::string eval_table(const EvalReport& rep);

/// Activity metrics of one behaviour as stored in report.json.
struct ActivityRow {
  Behaviour behaviour = Behaviour::Idle;
  double coverage = 0.0;
  std::optional<double> mean_vertical_diff;
  std::optional<double> jitter;
  std::optional<double> drift_slope;

  friend bool operator==(const ActivityRow&, const ActivityRow&) = default;
};
using ActivityRows = std::array<ActivityRow, kNumBehaviours>;

/// Reads the "activity" section of a report.json document. Throws
/// std::runtime_error when the document does not have that shape.
ActivityRows activity_rows_from_json(const nlohmann::json& report);

/// Coverage / mean diff / jitter / drift table. With several clips each
/// cell shows the min-max range over the clips that have a value; "–"
/// marks a statistic no clip could compute. Values use shortest
/// round-trip formatting.
std::string activity_table(std::span<const ActivityRows> clips);

}  // namespace pogona
