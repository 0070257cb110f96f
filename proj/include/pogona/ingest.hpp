#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pogona/errors.hpp"
#include "pogona/types.hpp"

namespace pogona {

/// Thresholds and window sizes for one analysis run. Every field is
/// configuration; reports echo the values that were actually used.
struct RunConfig {
  double beta = 0.33;        // basking: max vertical separation as a fraction of H
  double theta_max = 45.0;   // basking: max off-vertical angle, degrees
  double gamma = 0.25;       // hunting: max dragon-cricket distance as a fraction of W
  int max_gap = 15;          // longest hole (frames) bridged by interpolation
  int disappearance_window = 15;
  int min_episode = 3;       // shortest basking run kept, frames
  double cricket_gate = 0.05;  // association gate, fraction of W per elapsed frame
  FrameGeometry geometry;

  /// Throws ParseError(InvalidValue) naming the first offending field.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// One row of a YOLO-style label file (`class cx cy w h [conf]`).
struct LabelRecord {
  ClassLabel label = ClassLabel::BeardedDragon;
  BBox box;
  double confidence = 1.0;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

// Detection log: `!geometry W H FPS FRAME_COUNT` header, then
// `frame class cx cy w h conf` lines. Blank lines and `#` comments skipped.
Timeline parse_detection_log(std::string_view text);
Timeline parse_detection_log(std::istream& in);

/// Inverse of parse_detection_log. Doubles are written in shortest
/// round-trip form, so write -> parse reproduces the Timeline bit for bit.
/// Provenance is not part of the format.
std::string write_detection_log(const Timeline& timeline);

/// Label file body. With `allow_confidence`, lines may carry a sixth
/// confidence field (absent means 1.0); otherwise exactly five fields.
std::vector<LabelRecord> parse_label_text(std::string_view text, bool allow_confidence);

/// Ground truth as one combined stream: `!frame <n>` separators followed by
/// `class cx cy w h` lines. An optional leading `!geometry` header fixes the
/// geometry and frame count; otherwise geometry is 1x1@1fps and the frame
/// count is one past the highest frame seen.
Timeline parse_ground_truth(std::string_view text);

/// Every `<stem>_<frame>.txt` file of a directory, keyed by file name.
std::map<std::string, std::vector<LabelRecord>> load_label_dir(const std::filesystem::path& dir,
                                                               bool allow_confidence);

/// Frame index encoded in a `<stem>_<frame>.txt` name, or -1.
long long frame_from_label_name(std::string_view file_name);

/// Ground truth from a directory of per-frame files of a single clip.
Timeline parse_ground_truth_dir(const std::filesystem::path& dir);

/// `key = value` lines; absent keys keep their defaults.
RunConfig parse_config(std::string_view text, FrameGeometry geometry);

}  // namespace pogona
