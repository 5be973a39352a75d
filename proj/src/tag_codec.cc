// Copyright 2026 The wordspoof Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wordspoof/tag_codec.h"

#include <fstream>

#include "wordspoof/error.h"

namespace wordspoof {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool has_space(std::string_view s) {
  for (char c : s) {
    if (is_space(c)) return true;
  }
  return false;
}

enum class Marker { kNone, kTof, kEof };

// Marker starting at `pos`, preferring the longer one when both match.
Marker marker_at(std::string_view s, std::size_t pos, const MarkerConfig& cfg,
                 std::size_t* len) {
  const std::string_view rest = s.substr(pos);
  const bool tof = rest.starts_with(cfg.tof_marker);
  const bool eof = rest.starts_with(cfg.eof_marker);
  if (tof && (!eof || cfg.tof_marker.size() >= cfg.eof_marker.size())) {
    *len = cfg.tof_marker.size();
    return Marker::kTof;
  }
  if (eof) {
    *len = cfg.eof_marker.size();
    return Marker::kEof;
  }
  *len = 0;
  return Marker::kNone;
}

}  // namespace

std::string_view label_name(Label label) {
  return label == Label::kFake ? "FAKE" : "REAL";
}

void MarkerConfig::validate() const {
  if (tof_marker.empty() || eof_marker.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "markers must be non-empty");
  }
  if (tof_marker == eof_marker) {
    throw Error(ErrorKind::kInvalidArgument,
                "start and end markers must differ");
  }
  if (has_space(tof_marker) || has_space(eof_marker)) {
    throw Error(ErrorKind::kInvalidArgument,
                "markers must not contain whitespace");
  }
}

std::vector<std::string> TaggedTranscript::texts() const {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.text);
  return out;
}

std::size_t TaggedTranscript::count(Label label) const {
  std::size_t n = 0;
  for (const auto& w : words) n += (w.label == label);
  return n;
}

TaggedTranscript decode(std::string_view text, const MarkerConfig& cfg) {
  cfg.validate();
  TaggedTranscript out;
  bool open = false;
  std::string piece;

  auto flush = [&] {
    if (piece.empty()) return;
    out.words.push_back({piece, open ? Label::kFake : Label::kReal});
    piece.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      flush();
      ++i;
      continue;
    }
    std::size_t len = 0;
    switch (marker_at(text, i, cfg, &len)) {
      case Marker::kTof:
        flush();
        if (open && !cfg.lenient) {
          throw Error(ErrorKind::kNestedMarkers,
                      "start marker inside an open span at byte " +
                          std::to_string(i));
        }
        open = true;
        i += len;
        break;
      case Marker::kEof:
        flush();
        if (!open && !cfg.lenient) {
          throw Error(ErrorKind::kUnbalancedMarkers,
                      "end marker without a start marker at byte " +
                          std::to_string(i));
        }
        open = false;
        i += len;
        break;
      case Marker::kNone:
        piece.push_back(text[i]);
        ++i;
        break;
    }
  }
  flush();
  if (open && !cfg.lenient) {
    throw Error(ErrorKind::kUnbalancedMarkers,
                "start marker never closed");
  }
  return out;
}

bool is_valid_word(std::string_view text, const MarkerConfig& cfg) {
  if (text.empty() || has_space(text)) return false;
  MarkerConfig strict = cfg;
  strict.lenient = false;
  try {
    const std::string word(text);
    const TaggedTranscript real = decode(word, strict);
    if (real.words.size() != 1 || real.words[0].text != word ||
        real.words[0].label != Label::kReal) {
      return false;
    }
    const TaggedTranscript fake =
        decode(cfg.tof_marker + word + cfg.eof_marker, strict);
    return fake.words.size() == 1 && fake.words[0].text == word &&
           fake.words[0].label == Label::kFake;
  } catch (const Error&) {
    return false;
  }
}

std::string encode(const TaggedTranscript& t, const MarkerConfig& cfg) {
  cfg.validate();
  std::string out;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    const LabeledWord& w = t.words[i];
    if (!is_valid_word(w.text, cfg)) {
      throw Error(ErrorKind::kInvalidWord,
                  "word " + std::to_string(i) + " ('" + w.text +
                      "') cannot be encoded");
    }
    if (i > 0) out.push_back(' ');
    if (w.label == Label::kFake) {
      out += cfg.tof_marker;
      out += w.text;
      out += cfg.eof_marker;
    } else {
      out += w.text;
    }
  }
  return out;
}

std::string strip_markers(std::string_view text, const MarkerConfig& cfg) {
  cfg.validate();
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = 0;
    if (marker_at(text, i, cfg, &len) != Marker::kNone) {
      i += len;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::vector<TaggedLine> read_tagged_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::vector<TaggedLine> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorKind::kFormat, path + ":" + std::to_string(lineno) +
                                          ": expected '<id>\\t<text>'");
    }
    lines.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return lines;
}

void write_tagged_file(const std::string& path,
                       const std::vector<TaggedLine>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  for (const auto& [id, text] : lines) out << id << '\t' << text << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path);
}

}  // namespace wordspoof
