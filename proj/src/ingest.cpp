#include "pogona/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

namespace pogona {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::MissingGeometry: return "MissingGeometry";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::UnknownKey: return "UnknownKey";
  }
  return "Unknown";
}

ParseError::ParseError(ErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}: {}", line, error_kind_name(kind), detail)
                                  : fmt::format("{}: {}", error_kind_name(kind), detail)),
      kind_(kind),
      line_(line),
      detail_(detail) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits one line (comment already stripped) into whitespace-separated tokens.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Printable excerpt of a token for error messages; arbitrary bytes are escaped.
std::string quote(std::string_view token) {
  std::string out;
  for (char c : token.substr(0, 32)) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) {
      out.push_back(c);
    } else {
      out += fmt::format("\\x{:02x}", u);
    }
  }
  if (token.size() > 32) out += "...";
  return "'" + out + "'";
}

// Calls fn(line_number, line) for every line, newline and CR stripped.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (nl == std::string_view::npos && line.empty()) break;
    fn(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

long long parse_int(std::string_view tok, std::size_t line, std::string_view what) {
  long long v = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(ErrorKind::OutOfRange, line, fmt::format("{} {} overflows", what, quote(tok)));
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError(ErrorKind::MalformedLine, line, fmt::format("{} {} is not an integer", what, quote(tok)));
  }
  return v;
}

double parse_real(std::string_view tok, std::size_t line, std::string_view what) {
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(ErrorKind::OutOfRange, line, fmt::format("{} {} is out of range", what, quote(tok)));
  }
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError(ErrorKind::MalformedLine, line, fmt::format("{} {} is not a finite number", what, quote(tok)));
  }
  return v;
}

ClassLabel parse_class(std::string_view tok, std::size_t line) {
  const long long code = parse_int(tok, line, "class");
  const auto label = class_from_code(code);
  if (!label) throw ParseError(ErrorKind::UnknownClass, line, fmt::format("class id {} is not 0, 1 or 2", code));
  return *label;
}

void check_unit(double v, std::size_t line, std::string_view what) {
  if (v < 0.0 || v > 1.0) {
    throw ParseError(ErrorKind::OutOfRange, line, fmt::format("{} {} outside [0,1]", what, v));
  }
}

BBox parse_box(const std::vector<std::string_view>& tok, std::size_t first, std::size_t line) {
  BBox b{parse_real(tok[first], line, "cx"), parse_real(tok[first + 1], line, "cy"),
         parse_real(tok[first + 2], line, "w"), parse_real(tok[first + 3], line, "h")};
  check_unit(b.cx, line, "cx");
  check_unit(b.cy, line, "cy");
  if (!(b.w > 0.0 && b.w <= 1.0)) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("w {} outside (0,1]", b.w));
  if (!(b.h > 0.0 && b.h <= 1.0)) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("h {} outside (0,1]", b.h));
  if (!b.valid()) throw ParseError(ErrorKind::OutOfRange, line, "box lies entirely outside the frame");
  return b;
}

struct GeometryHeader {
  FrameGeometry geometry;
  int frame_count = 0;
};

GeometryHeader parse_geometry_directive(const std::vector<std::string_view>& tok, std::size_t line) {
  if (tok.size() != 5) {
    throw ParseError(ErrorKind::MalformedLine, line,
                     fmt::format("!geometry expects 4 fields (W H FPS FRAME_COUNT), got {}", tok.size() - 1));
  }
  const long long w = parse_int(tok[1], line, "width");
  const long long h = parse_int(tok[2], line, "height");
  const double fps = parse_real(tok[3], line, "fps");
  const long long frames = parse_int(tok[4], line, "frame count");
  if (w < 1 || w > INT_MAX) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("width {} invalid", w));
  if (h < 1 || h > INT_MAX) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("height {} invalid", h));
  if (!(fps > 0.0)) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("fps {} must be positive", fps));
  if (frames < 1 || frames > INT_MAX) {
    throw ParseError(ErrorKind::OutOfRange, line, fmt::format("frame count {} invalid", frames));
  }
  return {FrameGeometry{static_cast<int>(w), static_cast<int>(h), fps}, static_cast<int>(frames)};
}

int parse_frame_index(std::string_view tok, std::size_t line, int frame_count) {
  const long long f = parse_int(tok, line, "frame");
  if (f < 0) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("frame {} is negative", f));
  if (frame_count > 0 && f >= frame_count) {
    throw ParseError(ErrorKind::OutOfRange, line, fmt::format("frame {} >= frame count {}", f, frame_count));
  }
  if (f > INT_MAX) throw ParseError(ErrorKind::OutOfRange, line, fmt::format("frame {} too large", f));
  return static_cast<int>(f);
}

void sort_timeline(Timeline& tl) {
  for (auto& dets : tl.by_class) {
    std::stable_sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
      if (a.frame != b.frame) return a.frame < b.frame;
      return a.confidence > b.confidence;
    });
  }
}

std::string shortest(double v) { return fmt::format("{}", v); }

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ParseError(ErrorKind::InvalidValue, 0, msg); };
  if (!(beta > 0.0 && beta <= 1.0)) fail(fmt::format("beta = {} must lie in (0, 1]", beta));
  if (!(theta_max > 0.0 && theta_max <= 90.0)) fail(fmt::format("theta_max = {} must lie in (0, 90]", theta_max));
  if (!(gamma > 0.0 && gamma <= 1.0)) fail(fmt::format("gamma = {} must lie in (0, 1]", gamma));
  if (max_gap < 0) fail(fmt::format("max_gap = {} must be >= 0", max_gap));
  if (disappearance_window < 1) fail(fmt::format("disappearance_window = {} must be >= 1", disappearance_window));
  if (min_episode < 1) fail(fmt::format("min_episode = {} must be >= 1", min_episode));
  if (!(cricket_gate > 0.0 && cricket_gate <= 1.0)) fail(fmt::format("cricket_gate = {} must lie in (0, 1]", cricket_gate));
  if (!geometry.valid()) fail("geometry must have W >= 1, H >= 1, fps > 0");
}

Timeline parse_detection_log(std::string_view text) {
  Timeline tl;
  bool have_geometry = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto tok = tokenize(strip_comment(raw));
    if (tok.empty()) return;
    if (tok[0].front() == '!') {
      if (tok[0] != "!geometry") {
        throw ParseError(ErrorKind::MalformedLine, line_no, fmt::format("unknown directive {}", quote(tok[0])));
      }
      if (have_geometry) throw ParseError(ErrorKind::MalformedLine, line_no, "duplicate !geometry header");
      const auto hdr = parse_geometry_directive(tok, line_no);
      tl.geometry = hdr.geometry;
      tl.frame_count = hdr.frame_count;
      have_geometry = true;
      return;
    }
    if (!have_geometry) {
      throw ParseError(ErrorKind::MissingGeometry, line_no, "data line before the !geometry header");
    }
    if (tok.size() != 7) {
      throw ParseError(ErrorKind::MalformedLine, line_no, fmt::format("expected 7 fields, got {}", tok.size()));
    }
    Detection d;
    d.frame = parse_frame_index(tok[0], line_no, tl.frame_count);
    d.label = parse_class(tok[1], line_no);
    d.box = parse_box(tok, 2, line_no);
    d.confidence = parse_real(tok[6], line_no, "confidence");
    check_unit(d.confidence, line_no, "confidence");
    tl.of(d.label).push_back(d);
  });
  if (!have_geometry) throw ParseError(ErrorKind::MissingGeometry, 0, "log has no !geometry header");
  sort_timeline(tl);
  return tl;
}

Timeline parse_detection_log(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_detection_log(std::string_view(text));
}

std::string write_detection_log(const Timeline& timeline) {
  std::string out = fmt::format("!geometry {} {} {} {}\n", timeline.geometry.width, timeline.geometry.height,
                                shortest(timeline.geometry.fps), timeline.frame_count);
  std::array<std::size_t, kNumClasses> cursor{};
  for (;;) {
    // Next frame with any pending detection, then drain that frame class by class.
    int frame = INT_MAX;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (cursor[c] < timeline.by_class[c].size()) frame = std::min(frame, timeline.by_class[c][cursor[c]].frame);
    }
    if (frame == INT_MAX) break;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      const auto& dets = timeline.by_class[c];
      while (cursor[c] < dets.size() && dets[cursor[c]].frame == frame) {
        const auto& d = dets[cursor[c]++];
        out += fmt::format("{} {} {} {} {} {} {}\n", d.frame, c, shortest(d.box.cx), shortest(d.box.cy),
                           shortest(d.box.w), shortest(d.box.h), shortest(d.confidence));
      }
    }
  }
  return out;
}

std::vector<LabelRecord> parse_label_text(std::string_view text, bool allow_confidence) {
  std::vector<LabelRecord> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto tok = tokenize(strip_comment(raw));
    if (tok.empty()) return;
    const bool with_conf = allow_confidence && tok.size() == 6;
    if (tok.size() != 5 && !with_conf) {
      throw ParseError(ErrorKind::MalformedLine, line_no,
                       fmt::format("expected {} fields, got {}", allow_confidence ? "5 or 6" : "5", tok.size()));
    }
    LabelRecord r;
    r.label = parse_class(tok[0], line_no);
    r.box = parse_box(tok, 1, line_no);
    if (with_conf) {
      r.confidence = parse_real(tok[5], line_no, "confidence");
      check_unit(r.confidence, line_no, "confidence");
    }
    out.push_back(r);
  });
  return out;
}

Timeline parse_ground_truth(std::string_view text) {
  Timeline tl;
  bool have_geometry = false;
  bool seen_data = false;
  int current_frame = -1;
  int max_frame = -1;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto tok = tokenize(strip_comment(raw));
    if (tok.empty()) return;
    if (tok[0] == "!geometry") {
      if (have_geometry || seen_data) {
        throw ParseError(ErrorKind::MalformedLine, line_no, "!geometry must appear once, before any frame");
      }
      const auto hdr = parse_geometry_directive(tok, line_no);
      tl.geometry = hdr.geometry;
      tl.frame_count = hdr.frame_count;
      have_geometry = true;
      return;
    }
    if (tok[0] == "!frame") {
      if (tok.size() != 2) throw ParseError(ErrorKind::MalformedLine, line_no, "!frame expects one frame index");
      current_frame = parse_frame_index(tok[1], line_no, have_geometry ? tl.frame_count : 0);
      max_frame = std::max(max_frame, current_frame);
      seen_data = true;
      return;
    }
    if (tok[0].front() == '!') {
      throw ParseError(ErrorKind::MalformedLine, line_no, fmt::format("unknown directive {}", quote(tok[0])));
    }
    if (current_frame < 0) throw ParseError(ErrorKind::MalformedLine, line_no, "label line before any !frame");
    if (tok.size() != 5) {
      throw ParseError(ErrorKind::MalformedLine, line_no, fmt::format("expected 5 fields, got {}", tok.size()));
    }
    Detection d;
    d.frame = current_frame;
    d.label = parse_class(tok[0], line_no);
    d.box = parse_box(tok, 1, line_no);
    d.confidence = 1.0;
    tl.of(d.label).push_back(d);
  });
  if (!have_geometry) tl.frame_count = max_frame + 1;
  sort_timeline(tl);
  return tl;
}

long long frame_from_label_name(std::string_view name) {
  constexpr std::string_view ext = ".txt";
  if (name.size() <= ext.size() || name.substr(name.size() - ext.size()) != ext) return -1;
  name.remove_suffix(ext.size());
  const auto us = name.rfind('_');
  if (us == std::string_view::npos || us + 1 == name.size()) return -1;
  const auto digits = name.substr(us + 1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return -1;
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || v > INT_MAX) return -1;
  return v;
}

std::map<std::string, std::vector<LabelRecord>> load_label_dir(const std::filesystem::path& dir,
                                                               bool allow_confidence) {
  std::map<std::string, std::vector<LabelRecord>> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (entry.path().extension() != ".txt") continue;
    if (frame_from_label_name(name) < 0) {
      throw ParseError(ErrorKind::MalformedLine, 0, fmt::format("{}: name does not match <stem>_<frame>.txt", name));
    }
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) throw std::filesystem::filesystem_error("cannot open", entry.path(), std::make_error_code(std::errc::io_error));
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
      out.emplace(name, parse_label_text(text, allow_confidence));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.line(), fmt::format("{}: {}", name, e.detail()));
    }
  }
  return out;
}

Timeline parse_ground_truth_dir(const std::filesystem::path& dir) {
  Timeline tl;
  std::map<long long, std::string> owner;
  int max_frame = -1;
  for (const auto& [name, records] : load_label_dir(dir, false)) {
    const long long frame = frame_from_label_name(name);
    if (auto [it, inserted] = owner.emplace(frame, name); !inserted) {
      throw ParseError(ErrorKind::MalformedLine, 0,
                       fmt::format("{} and {} both describe frame {}", it->second, name, frame));
    }
    max_frame = std::max(max_frame, static_cast<int>(frame));
    for (const auto& r : records) {
      tl.of(r.label).push_back(Detection{static_cast<int>(frame), r.label, r.box, 1.0, Provenance::Observed});
    }
  }
  tl.frame_count = max_frame + 1;
  sort_timeline(tl);
  return tl;
}

RunConfig parse_config(std::string_view text, FrameGeometry geometry) {
  RunConfig cfg;
  cfg.geometry = geometry;
  std::vector<std::string> seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = trim(strip_comment(raw));
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(ErrorKind::MalformedLine, line_no, "expected `key = value`");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty() || tokenize(value).size() != 1) {
      throw ParseError(ErrorKind::InvalidValue, line_no, fmt::format("{} needs exactly one value", quote(key)));
    }
    auto real = [&] {
      try {
        return parse_real(value, line_no, key);
      } catch (const ParseError& e) {
        throw ParseError(ErrorKind::InvalidValue, line_no, e.detail());
      }
    };
    auto integer = [&] {
      try {
        const long long v = parse_int(value, line_no, key);
        if (v < INT_MIN || v > INT_MAX) throw ParseError(ErrorKind::InvalidValue, line_no, "value overflows");
        return static_cast<int>(v);
      } catch (const ParseError& e) {
        throw ParseError(ErrorKind::InvalidValue, line_no, e.detail());
      }
    };
    if (key == "beta") cfg.beta = real();
    else if (key == "theta_max") cfg.theta_max = real();
    else if (key == "gamma") cfg.gamma = real();
    else if (key == "max_gap") cfg.max_gap = integer();
    else if (key == "disappearance_window") cfg.disappearance_window = integer();
    else if (key == "min_episode") cfg.min_episode = integer();
    else if (key == "cricket_gate") cfg.cricket_gate = real();
    else throw ParseError(ErrorKind::UnknownKey, line_no, fmt::format("unknown key {}", quote(key)));

    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError(ErrorKind::InvalidValue, line_no, fmt::format("key {} set twice", quote(key)));
    }
    seen.emplace_back(key);
    try {
      cfg.validate();
    } catch (const ParseError& e) {
      throw ParseError(ErrorKind::InvalidValue, line_no, e.detail());
    }
  });
  cfg.validate();
  return cfg;
}

}  // namespace pogona
