#include "pogona/report_io.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace pogona {

namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string_view provenance_name(Provenance p) { return p == Provenance::Observed ? "observed" : "interpolated"; }

json optional_provenance(const std::optional<Provenance>& p) {
  return p ? json(std::string(provenance_name(*p))) : json(nullptr);
}

json sweep_to_json(const F1Sweep& s) {
  return {{"max_f1", s.max_f1},
          {"max_f1_threshold", optional_json(s.max_f1_threshold)},
          {"precision_one_threshold", optional_json(s.precision_one_threshold)}};
}

json prf_to_json(const PrecisionRecall& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

std::optional<double> optional_from_json(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : "–"; }

std::string range_cell(const std::vector<double>& values) {
  if (values.empty()) return "–";
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return fmt::format("{}", *lo);
  return fmt::format("{}–{}", *lo, *hi);
}

// Display width of a UTF-8 string (counts code points).
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string pad(std::string s, std::size_t width) {
  const auto w = display_width(s);
  if (w < width) s.append(width - w, ' ');
  return s;
}

std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    widths.resize(std::max(widths.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], display_width(r[i]));
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += i + 1 == r.size() ? r[i] : pad(r[i], widths[i] + 2);
    }
    out += line + "\n";
  }
  return out;
}

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

}  // namespace

json config_to_json(const RunConfig& cfg) {
  return {{"beta", cfg.beta},
          {"theta_max", cfg.theta_max},
          {"gamma", cfg.gamma},
          {"max_gap", cfg.max_gap},
          {"disappearance_window", cfg.disappearance_window},
          {"min_episode", cfg.min_episode},
          {"cricket_gate", cfg.cricket_gate},
          {"geometry", {{"width", cfg.geometry.width}, {"height", cfg.geometry.height}, {"fps", cfg.geometry.fps}}}};
}

json analysis_to_json(const AnalysisOutput& out) {
  json episodes = json::array();
  for (const auto& e : out.episodes) {
    episodes.push_back({{"behaviour", behaviour_name(e.behaviour)},
                        {"start_frame", e.start_frame},
                        {"end_frame", e.end_frame},
                        {"duration_s", e.duration_s}});
  }
  json activity = json::object();
  for (const auto& a : out.activity) {
    activity[std::string(behaviour_name(a.behaviour))] = {{"coverage", a.coverage},
                                                          {"mean_vertical_diff", optional_json(a.mean_vertical_diff)},
                                                          {"jitter", optional_json(a.jitter)},
                                                          {"drift_slope", optional_json(a.drift_slope)},
                                                          {"frames_in_state", a.frames_in_state},
                                                          {"frames_used", a.frames_used}};
  }
  json events = json::array();
  for (const auto& e : out.hunting_events) {
    events.push_back({{"frame", e.frame}, {"track", e.track}, {"distance_px", e.distance_px}});
  }
  return {{"config", config_to_json(out.config)},
          {"frame_count", out.frame_count},
          {"episodes", episodes},
          {"activity", activity},
          {"hunting_events", events},
          {"hunting_count", out.hunting_events.size()},
          {"tracks", {{"cricket_tracks", out.cricket_tracks}}},
          {"continuity",
           {{"definition", "fraction of frames between first and last detection that carry a detection"},
            {"dragon", {{"before", out.dragon_continuity.before}, {"after", out.dragon_continuity.after}}},
            {"lamp", {{"before", out.lamp_continuity.before}, {"after", out.lamp_continuity.after}}}}}};
}

std::string events_text(const AnalysisOutput& out) {
  std::string s;
  for (const auto& e : out.episodes) {
    s += fmt::format("{} {} {} {}\n", behaviour_name(e.behaviour), e.start_frame, e.end_frame, e.duration_s);
  }
  return s;
}

std::string frames_jsonl(const AnalysisOutput& out) {
  std::string s;
  for (const auto& r : out.frames) {
    json j = {{"frame", r.frame},
              {"state", behaviour_name(r.state)},
              {"delta_y", optional_json(r.delta_y)},
              {"theta", optional_json(r.theta)},
              {"dragon", optional_provenance(r.dragon)},
              {"lamp", optional_provenance(r.lamp)},
              {"crickets", r.crickets},
              {"hunting_event", r.hunting_event}};
    s += j.dump() + "\n";
  }
  return s;
}

json eval_to_json(const EvalReport& rep) {
  json classes = json::object();
  for (const auto& c : rep.classes) {
    classes[std::string(class_name(c.label))] = {{"ground_truths", c.num_gts},
                                                 {"predictions", c.num_preds},
                                                 {"tp", c.tp},
                                                 {"fp", c.fp},
                                                 {"fn", c.fn},
                                                 {"at_threshold", prf_to_json(c.at_threshold)},
                                                 {"ap50", optional_json(c.ap50)},
                                                 {"ap50_95", optional_json(c.ap50_95)},
                                                 {"f1_sweep", sweep_to_json(c.sweep)}};
  }
  json labels = json::array();
  for (auto c : kAllClasses) labels.push_back(std::string(class_name(c)));
  labels.push_back("background");
  json normalized = json::array(), counts = json::array();
  for (std::size_t r = 0; r < ConfusionMatrix::kSize; ++r) {
    normalized.push_back(rep.confusion.normalized[r]);
    counts.push_back(rep.confusion.counts[r]);
  }
  return {{"options",
           {{"iou_threshold", rep.options.iou_threshold},
            {"confidence_threshold", rep.options.confidence_threshold},
            {"ap_method", "101-point interpolated, COCO IoU thresholds 0.50:0.05:0.95"}}},
          {"images", rep.num_images},
          {"classes", classes},
          {"all_classes",
           {{"at_threshold", prf_to_json(rep.overall)},
            {"map50", rep.map50},
            {"map50_95", rep.map50_95},
            {"f1_sweep", sweep_to_json(rep.sweep)}}},
          {"confusion_matrix",
           {{"labels", labels}, {"rows", "predicted"}, {"columns", "true"}, {"counts", counts}, {"normalized", normalized}}}};
}

std::string eval_table(const EvalReport& rep) {
  std::vector<std::vector<std::string>> rows{{"Class", "Instances", "P", "R", "F1", "mAP@0.5", "mAP@0.5:0.95"}};
  std::size_t instances = 0;
  for (const auto& c : rep.classes) {
    instances += c.num_gts;
    rows.push_back({std::string(class_name(c.label)), std::to_string(c.num_gts), fixed3(c.at_threshold.precision),
                    fixed3(c.at_threshold.recall), fixed3(c.at_threshold.f1), c.ap50 ? fixed3(*c.ap50) : "–",
                    c.ap50_95 ? fixed3(*c.ap50_95) : "–"});
  }
  rows.push_back({"All Classes", std::to_string(instances), fixed3(rep.overall.precision), fixed3(rep.overall.recall),
                  fixed3(rep.overall.f1), fixed3(rep.map50), fixed3(rep.map50_95)});
  std::string out = fmt::format("images: {}  iou: {}  conf: {}\n\n", rep.num_images, rep.options.iou_threshold,
                                rep.options.confidence_threshold);
  out += render(rows);

  auto thr = [](const std::optional<double>& v) { return v ? fixed3(*v) : std::string("–"); };
  out += "\n";
  out += render({{"Metric", "Peak Value", "Confidence Threshold"},
                 {"Max F1 Score", fmt::format("{:.2f}", rep.sweep.max_f1), thr(rep.sweep.max_f1_threshold)},
                 {"Precision at 100%", rep.sweep.precision_one_threshold ? "1.00" : "–",
                  thr(rep.sweep.precision_one_threshold)}});

  out += "\nconfusion matrix (rows: predicted, columns: true, column-normalized)\n";
  std::vector<std::vector<std::string>> cm{{""}};
  for (auto c : kAllClasses) cm[0].push_back(std::string(class_name(c)));
  cm[0].push_back("background");
  for (std::size_t r = 0; r < ConfusionMatrix::kSize; ++r) {
    cm.push_back({r < kNumClasses ? std::string(class_name(kAllClasses[r])) : "background"});
    for (std::size_t c = 0; c < ConfusionMatrix::kSize; ++c) cm.back().push_back(fmt::format("{:.2f}", rep.confusion.normalized[r][c]));
  }
  out += render(cm);
  return out;
}

json expected_to_json(const GeneratedScenario& gen) {
  const auto& s = gen.scenario;
  json episodes = json::array();
  for (const auto& e : gen.episodes) {
    episodes.push_back({{"behaviour", behaviour_name(e.behaviour)},
                        {"start_frame", e.start_frame},
                        {"end_frame", e.end_frame},
                        {"duration_s", e.duration_s}});
  }
  json activity = json::object();
  for (auto b : kAllBehaviours) {
    const auto& a = gen.activity[static_cast<std::size_t>(b)];
    activity[std::string(behaviour_name(b))] = {{"coverage", a.coverage},
                                                {"mean_vertical_diff", optional_json(a.mean_vertical_diff)}};
  }
  json scenario = {{"kind", behaviour_name(s.kind)},
                   {"frames", s.frames},
                   {"geometry", {{"width", s.geometry.width}, {"height", s.geometry.height}, {"fps", s.geometry.fps}}},
                   {"dropout", s.dropout_rate},
                   {"noise", s.position_noise},
                   {"seed", s.seed},
                   {"rng", "mt19937_64; uniform = (x >> 11) * 2^-53; normal = Box-Muller cosine branch"}};
  if (s.kind == Behaviour::Hunting) {
    scenario["vanish_frame"] = s.effective_vanish_frame();
    scenario["hunt_distance"] = s.hunt_distance;
  }
  return {{"scenario", scenario},
          {"episodes", episodes},
          {"hunting_frames", gen.hunting_frames},
          {"activity", activity},
          {"note", "expectations are computed from the noiseless script under default thresholds"}};
}

ActivityRows activity_rows_from_json(const json& report) {
  ActivityRows rows;
  try {
    const auto& act = report.at("activity");
    for (auto b : kAllBehaviours) {
      const auto& j = act.at(std::string(behaviour_name(b)));
      auto& r = rows[static_cast<std::size_t>(b)];
      r.behaviour = b;
      r.coverage = j.at("coverage").get<double>();
      r.mean_vertical_diff = optional_from_json(j, "mean_vertical_diff");
      r.jitter = optional_from_json(j, "jitter");
      r.drift_slope = optional_from_json(j, "drift_slope");
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(fmt::format("not an analysis report: {}", e.what()));
  }
  return rows;
}

std::string activity_table(std::span<const ActivityRows> clips) {
  std::vector<std::vector<std::string>> rows{{"Scenario", "Coverage (%)", "Mean Diff. (px)", "Jitter (px)", "Drift (px/s)"}};
  for (auto b : kAllBehaviours) {
    std::string name(behaviour_name(b));
    name[0] = static_cast<char>(name[0] - 'a' + 'A');
    const auto i = static_cast<std::size_t>(b);
    if (clips.size() == 1) {
      const auto& r = clips[0][i];
      rows.push_back({name, fmt::format("{}", r.coverage), cell(r.mean_vertical_diff), cell(r.jitter), cell(r.drift_slope)});
      continue;
    }
    std::vector<double> cov, mean, jit, drift;
    for (const auto& clip : clips) {
      const auto& r = clip[i];
      cov.push_back(r.coverage);
      if (r.mean_vertical_diff) mean.push_back(*r.mean_vertical_diff);
      if (r.jitter) jit.push_back(*r.jitter);
      if (r.drift_slope) drift.push_back(*r.drift_slope);
    }
    rows.push_back({name, range_cell(cov), range_cell(mean), range_cell(jit), range_cell(drift)});
  }
  return render(rows);
}

}  // namespace pogona
