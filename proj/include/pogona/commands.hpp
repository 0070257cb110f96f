#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pogona/eval.hpp"
#include "pogona/ingest.hpp"
#include "pogona/synthgen.hpp"

namespace pogona::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;     // bad input text or invalid flags
inline constexpr int kExitIo = 2;
inline constexpr int kExitMismatch = 3;  // prediction file without ground truth

/// Threshold flags; any that are set win over the config file.
struct ConfigOverrides {
  std::optional<double> beta;
  std::optional<double> theta_max;
  std::optional<double> gamma;
  std::optional<int> max_gap;
  std::optional<int> disappearance_window;
  std::optional<int> min_episode;

  void apply(RunConfig& cfg) const;
};

struct AnalyzeOptions {
  std::filesystem::path log;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
  ConfigOverrides overrides;
};

/// Writes events.txt, report.json, frames.jsonl and meta.json into `out`.
/// Nothing is written unless the whole analysis succeeds.
int analyze(const AnalyzeOptions& opts, std::ostream& log, std::ostream& err);

struct EvaluateOptions {
  std::filesystem::path preds;
  std::filesystem::path gts;
  std::optional<std::filesystem::path> out;
  EvalOptions eval;
};

/// Prediction and ground-truth directories of `<stem>_<frame>.txt` files,
/// paired by file name. A ground-truth file with no prediction file counts
/// as an image without detections; the reverse is a mismatch (exit 3).
int evaluate(const EvaluateOptions& opts, std::ostream& log, std::ostream& err);

struct SimulateOptions {
  Scenario scenario;
  std::filesystem::path out;  // log path; the sidecar is <out stem>.expected.json
};

int simulate(const SimulateOptions& opts, std::ostream& log, std::ostream& err);

/// Renders one or more report.json files as an activity table.
int report(const std::vector<std::filesystem::path>& reports, std::ostream& out, std::ostream& err);

/// Path of the expected-output sidecar that belongs to a simulated log.
std::filesystem::path sidecar_path(const std::filesystem::path& log_path);

}  // namespace pogona::cli
