// pogona: offline behaviour analytics for enclosure detection logs.
//
//   pogona analyze  --log clip.log [--config run.cfg] --out results/
//   pogona evaluate --preds preds/ --gts labels/ [--iou 0.5] [--conf 0.25] [--out eval/]
//   pogona simulate --kind basking --frames 200 --seed 7 --out clip.log
//   pogona report   results/report.json [more/report.json ...]

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pogona/commands.hpp"

namespace {

using namespace pogona;

template <typename T>
void add_override(CLI::App* cmd, const std::string& flag, std::optional<T>& slot, const std::string& help) {
  cmd->add_option_function<T>(flag, [&slot](const T& v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behaviour analytics for bearded-dragon enclosure detection logs"};
  app.require_subcommand(1);

  cli::AnalyzeOptions analyze;
  std::string analyze_config;
  auto* an = app.add_subcommand("analyze", "Classify basking/hunting/idle episodes in a detection log");
  an->add_option("--log", analyze.log, "Detection log")->required()->check(CLI::ExistingFile);
  an->add_option("--config", analyze_config, "key = value threshold file")->check(CLI::ExistingFile);
  an->add_option("--out", analyze.out, "Output directory")->required();
  add_override(an, "--beta", analyze.overrides.beta, "Basking vertical threshold, fraction of H");
  add_override(an, "--theta-max", analyze.overrides.theta_max, "Basking max angle, degrees");
  add_override(an, "--gamma", analyze.overrides.gamma, "Hunting distance threshold, fraction of W");
  add_override(an, "--max-gap", analyze.overrides.max_gap, "Longest gap bridged by interpolation, frames");
  add_override(an, "--disappearance-window", analyze.overrides.disappearance_window,
               "Frames a cricket must stay gone");
  add_override(an, "--min-episode", analyze.overrides.min_episode, "Shortest basking episode kept, frames");

  cli::EvaluateOptions evaluate;
  std::string eval_out;
  auto* ev = app.add_subcommand("evaluate", "Score per-frame prediction files against ground truth");
  ev->add_option("--preds", evaluate.preds, "Prediction directory")->required();
  ev->add_option("--gts", evaluate.gts, "Ground-truth directory")->required();
  ev->add_option("--out", eval_out, "Directory for eval.json and eval.txt");
  ev->add_option("--iou", evaluate.eval.iou_threshold, "IoU threshold for P/R/F1 and the confusion matrix")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  ev->add_option("--conf", evaluate.eval.confidence_threshold, "Confidence threshold for P/R/F1")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  cli::SimulateOptions simulate;
  std::string kind = "basking";
  auto* sim = app.add_subcommand("simulate", "Write a synthetic detection log and its expected outcome");
  sim->add_option("--kind", kind, "idle | basking | hunting")
      ->check(CLI::IsMember({"idle", "basking", "hunting"}))
      ->capture_default_str();
  sim->add_option("--frames", simulate.scenario.frames, "Clip length")->capture_default_str();
  sim->add_option("--seed", simulate.scenario.seed, "Generator seed")->capture_default_str();
  sim->add_option("--dropout", simulate.scenario.dropout_rate, "Per-detection drop probability")->capture_default_str();
  sim->add_option("--noise", simulate.scenario.position_noise, "Center noise std-dev, normalized")->capture_default_str();
  sim->add_option("--width", simulate.scenario.geometry.width, "Frame width, px")->capture_default_str();
  sim->add_option("--height", simulate.scenario.geometry.height, "Frame height, px")->capture_default_str();
  sim->add_option("--fps", simulate.scenario.geometry.fps, "Frames per second")->capture_default_str();
  sim->add_option("--vanish-frame", simulate.scenario.vanish_frame, "Hunting: last cricket frame (-1 = 3/5 of clip)")
      ->capture_default_str();
  sim->add_option("--hunt-distance", simulate.scenario.hunt_distance, "Hunting: final distance, fraction of W")
      ->capture_default_str();
  sim->add_option("--out", simulate.out, "Log path; sidecar goes next to it")->required();

  std::vector<std::string> report_files;
  auto* rep = app.add_subcommand("report", "Render report.json files as an activity table");
  rep->add_option("reports", report_files, "report.json files")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitParse;
  }

  if (*an) {
    if (!analyze_config.empty()) analyze.config = analyze_config;
    return cli::analyze(analyze, std::cout, std::cerr);
  }
  if (*ev) {
    if (!eval_out.empty()) evaluate.out = eval_out;
    return cli::evaluate(evaluate, std::cout, std::cerr);
  }
  if (*sim) {
    simulate.scenario.kind = *behaviour_from_name(kind);
    return cli::simulate(simulate, std::cout, std::cerr);
  }
  std::vector<std::filesystem::path> paths(report_files.begin(), report_files.end());
  return cli::report(paths, std::cout, std::cerr);
}
