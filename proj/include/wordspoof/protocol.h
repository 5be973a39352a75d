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

#ifndef WORDSPOOF_PROTOCOL_H_
#define WORDSPOOF_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordspoof/detect_metrics.h"
#include "wordspoof/gl_vocoder.h"

namespace wordspoof {

inline constexpr std::string_view kBuiltinGenerator = "gl";

struct UtteranceRecord {
  std::string utt_id;
  std::string audio_path;
  std::string language;
  std::vector<WordSpan> words;  // all REAL on input
  std::optional<int> sample_rate_hz;
};

// Parses one corpus line. Relative audio paths are resolved against base_dir.
UtteranceRecord parse_utterance(std::string_view json_line,
                                const std::string& base_dir = "");
// JSON Lines corpus; blank lines are skipped. Throws kFormat with the line
// number on malformed input, kIo when unreadable.
std::vector<UtteranceRecord> read_corpus(const std::string& path);

// Ids end up in file names and tab-separated transcripts.
bool is_valid_id(std::string_view id);

enum class EntryStatus { kOk, kSkipped };

struct ManifestEntry {
  std::string key;  // "<utt_id>-<generator>"
  std::string utt_id;
  std::string generator;
  std::string language;
  EntryStatus status = EntryStatus::kOk;
  std::string skip_reason;
  std::uint64_t seed = 0;
  std::vector<std::size_t> selected_indices;
  std::string source_audio;
  std::string output_audio;  // relative to the output directory
  std::string tagged_ref;
  double duration_s = 0.0;
  int sample_rate_hz = kDefaultSampleRate;
  std::vector<WordSpan> words;  // output timeline, labelled
};

std::string manifest_line(const ManifestEntry& e);
ManifestEntry parse_manifest_line(std::string_view line);
std::vector<ManifestEntry> read_manifest(const std::string& path);
std::string entry_key(std::string_view utt_id, std::string_view generator);

struct BuildConfig {
  std::uint64_t master_seed = 0;
  std::vector<std::string> generators{std::string(kBuiltinGenerator)};
  std::size_t words_min = 1;
  std::size_t words_max = 5;
  double fade_s = 0.010;
  CopySynthOptions synth;
  std::optional<std::string> external_dir;  // <dir>/<generator>/<utt_id>/<index>.wav
  std::size_t jobs = 0;                     // 0 = hardware concurrency

  void validate() const;
};

// Stable across platforms and processing order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view utt_id,
                          std::string_view generator);

// Strictly increasing indices; the count is uniform on
// [min_words, min(max_words, words)].
std::vector<std::size_t> select_words(const UtteranceRecord& rec,
                                      std::uint64_t seed, std::size_t min_words,
                                      std::size_t max_words);

// Processes one (utterance, generator) pair. Failures come back as SKIPPED.
// The wave is only written when out_dir is non-empty.
ManifestEntry build_entry(const UtteranceRecord& rec, const std::string& generator,
                          const BuildConfig& cfg, const std::string& out_dir);

struct BuildSummary {
  std::vector<ManifestEntry> entries;  // sorted by (utt_id, generator)
  std::size_t ok = 0;
  std::size_t skipped = 0;
};

// Writes <out>/wav/<key>.wav, <out>/manifest.jsonl and <out>/ref.txt.
// Throws kIo if the output cannot be written, kInvalidArgument on a bad
// config or duplicate utt_id.
BuildSummary build_dataset(std::span<const UtteranceRecord> corpus,
                           const BuildConfig& cfg, const std::string& out_dir);

}  // namespace wordspoof

#endif  // WORDSPOOF_PROTOCOL_H_
