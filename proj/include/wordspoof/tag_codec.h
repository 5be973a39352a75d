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

// Tagged transcripts: plain text in which synthetic words are wrapped by a
// start marker and an end marker, e.g. "!!!!!!wearing~~~ boots.".

#ifndef WORDSPOOF_TAG_CODEC_H_
#define WORDSPOOF_TAG_CODEC_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wordspoof {

enum class Label { kReal, kFake };

std::string_view label_name(Label label);

struct MarkerConfig {
  std::string tof_marker = "!!!!!!";
  std::string eof_marker = "~~~";
  // Recover from unbalanced markers instead of throwing. Hypotheses coming
  // out of a model are decoded leniently.
  bool lenient = false;

  // Throws kInvalidArgument when a marker is empty, contains whitespace, or
  // both markers are equal.
  void validate() const;
};

struct LabeledWord {
  std::string text;
  Label label = Label::kReal;

  friend bool operator==(const LabeledWord&, const LabeledWord&) = default;
};

struct TaggedTranscript {
  std::vector<LabeledWord> words;

  std::vector<std::string> texts() const;
  std::size_t count(Label label) const;

  friend bool operator==(const TaggedTranscript&,
                         const TaggedTranscript&) = default;
};

// Splits on whitespace and labels every word between a start marker and its
// matching end marker as FAKE. Markers may be attached to a word
// ("!!!!!!Now~~~") or stand alone as tokens, and one pair may span several
// words. A marker in the middle of a token separates two words.
//
// Strict mode throws kNestedMarkers for a start marker inside an open span
// and kUnbalancedMarkers for a stray end marker or a span left open at the
// end of the text. Lenient mode ignores the former two and lets an open span
// run to the end of the text.
TaggedTranscript decode(std::string_view text, const MarkerConfig& cfg = {});

// Canonical form: each FAKE word is wrapped individually and words are joined
// by single spaces. Throws kInvalidWord for a word that would not survive
// decode() unchanged (empty, whitespace, or marker-like content).
std::string encode(const TaggedTranscript& t, const MarkerConfig& cfg = {});

// True when `text` can be carried by a LabeledWord under either label.
bool is_valid_word(std::string_view text, const MarkerConfig& cfg = {});

// Removes every marker occurrence and leaves all other bytes untouched.
std::string strip_markers(std::string_view text, const MarkerConfig& cfg = {});

// One utterance per line: "<utterance_id>\t<tagged text>". Blank lines are
// skipped; order and duplicates are preserved as read.
using TaggedLine = std::pair<std::string, std::string>;
std::vector<TaggedLine> read_tagged_file(const std::string& path);
void write_tagged_file(const std::string& path,
                       const std::vector<TaggedLine>& lines);

}  // namespace wordspoof

#endif  // WORDSPOOF_TAG_CODEC_H_
