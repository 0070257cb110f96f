#include "pogona/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "pogona/analysis.hpp"
#include "pogona/report_io.hpp"

namespace pogona::cli {

namespace fs = std::filesystem;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read {}", p.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Collects output files and publishes them together: every file is first
// written next to its target and only renamed into place once all writes
// succeeded.
class AtomicOutputs {
 public:
  void add(fs::path target, std::string content) { files_.emplace_back(std::move(target), std::move(content)); }

  void commit() {
    std::vector<fs::path> temps;
    try {
      for (const auto& [target, content] : files_) {
        if (target.has_parent_path()) fs::create_directories(target.parent_path());
        auto tmp = target;
        tmp += ".tmp";
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError(fmt::format("cannot write {}", tmp.string()));
        temps.push_back(tmp);
        os << content;
        os.close();
        if (!os) throw IoError(fmt::format("cannot write {}", tmp.string()));
      }
      for (std::size_t i = 0; i < files_.size(); ++i) fs::rename(temps[i], files_[i].first);
    } catch (...) {
      std::error_code ec;
      for (const auto& t : temps) fs::remove(t, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void ConfigOverrides::apply(RunConfig& cfg) const {
  if (beta) cfg.beta = *beta;
  if (theta_max) cfg.theta_max = *theta_max;
  if (gamma) cfg.gamma = *gamma;
  if (max_gap) cfg.max_gap = *max_gap;
  if (disappearance_window) cfg.disappearance_window = *disappearance_window;
  if (min_episode) cfg.min_episode = *min_episode;
}

int analyze(const AnalyzeOptions& opts, std::ostream& log, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    const auto log_text = read_file(opts.log);
    const std::string cfg_text = opts.config ? read_file(*opts.config) : std::string();

    Timeline tl;
    try {
      tl = parse_detection_log(log_text);
    } catch (const ParseError& e) {
      err << opts.log.string() << ": " << e.what() << "\n";
      return kExitParse;
    }
    RunConfig cfg;
    try {
      cfg = parse_config(cfg_text, tl.geometry);
      opts.overrides.apply(cfg);
      cfg.validate();
    } catch (const ParseError& e) {
      err << (opts.config ? opts.config->string() : std::string("flags")) << ": " << e.what() << "\n";
      return kExitParse;
    }

    const auto result = pogona::analyze(tl, cfg);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

    AtomicOutputs outputs;
    outputs.add(opts.out / "events.txt", events_text(result));
    outputs.add(opts.out / "report.json", analysis_to_json(result).dump(2) + "\n");
    outputs.add(opts.out / "frames.jsonl", frames_jsonl(result));
    const nlohmann::json meta = {{"generated_at", utc_now()}, {"elapsed_ms", elapsed_ms}, {"log", opts.log.string()}};
    outputs.add(opts.out / "meta.json", meta.dump(2) + "\n");
    outputs.commit();

    log << fmt::format("{} frames, {} episodes, {} hunting events -> {}\n", result.frame_count,
                       result.episodes.size(), result.hunting_events.size(), opts.out.string());
    return kExitOk;
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitIo;
  }
}

int evaluate(const EvaluateOptions& opts, std::ostream& log, std::ostream& err) {
  try {
    for (const auto* dir : {&opts.preds, &opts.gts}) {
      if (!fs::is_directory(*dir)) {
        err << dir->string() << ": not a directory\n";
        return kExitIo;
      }
    }
    std::map<std::string, std::vector<LabelRecord>> preds, gts;
    try {
      preds = load_label_dir(opts.preds, true);
      gts = load_label_dir(opts.gts, false);
    } catch (const ParseError& e) {
      err << e.what() << "\n";
      return kExitParse;
    }
    std::vector<std::string> orphans;
    for (const auto& [name, _] : preds) {
      if (!gts.contains(name)) orphans.push_back(name);
    }
    if (!orphans.empty()) {
      err << fmt::format("{} prediction file(s) have no ground truth, first: {}\n", orphans.size(), orphans.front());
      return kExitMismatch;
    }

    EvalDataset data;
    for (const auto& [name, records] : gts) {
      const std::size_t image = data.images.size();
      data.images.push_back(name);
      for (const auto& r : records) data.gts.push_back({image, r.label, r.box, 1.0});
      if (auto it = preds.find(name); it != preds.end()) {
        for (const auto& r : it->second) data.preds.push_back({image, r.label, r.box, r.confidence});
      }
    }
    const auto rep = pogona::evaluate(data, opts.eval);
    const auto table = eval_table(rep);
    if (opts.out) {
      AtomicOutputs outputs;
      outputs.add(*opts.out / "eval.json", eval_to_json(rep).dump(2) + "\n");
      outputs.add(*opts.out / "eval.txt", table);
      outputs.commit();
    }
    log << table;
    return kExitOk;
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitIo;
  }
}

fs::path sidecar_path(const fs::path& log_path) {
  auto p = log_path;
  p.replace_extension(".expected.json");
  return p;
}

int simulate(const SimulateOptions& opts, std::ostream& log, std::ostream& err) {
  GeneratedScenario gen;
  try {
    gen = generate(opts.scenario);
  } catch (const InvalidScenario& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    AtomicOutputs outputs;
    outputs.add(opts.out, gen.log);
    outputs.add(sidecar_path(opts.out), expected_to_json(gen).dump(2) + "\n");
    outputs.commit();
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitIo;
  }
  log << fmt::format("wrote {} and {}\n", opts.out.string(), sidecar_path(opts.out).string());
  return kExitOk;
}

int report(const std::vector<fs::path>& reports, std::ostream& out, std::ostream& err) {
  std::vector<ActivityRows> clips;
  for (const auto& path : reports) {
    std::string text;
    try {
      text = read_file(path);
    } catch (const IoError& e) {
      err << e.what() << "\n";
      return kExitIo;
    }
    try {
      clips.push_back(activity_rows_from_json(nlohmann::json::parse(text)));
    } catch (const std::exception& e) {
      err << path.string() << ": " << e.what() << "\n";
      return kExitParse;
    }
  }
  if (clips.size() > 1) out << fmt::format("{} clips (ranges are min–max over clips)\n", clips.size());
  out << activity_table(clips);
  return kExitOk;
}

}  // namespace pogona::cli
