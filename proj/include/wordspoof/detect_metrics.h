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

// Synthetic-word detection scoring: FAR/FRR from aligned tagged transcripts,
// frame-level labels and frame-to-word pooling, and count decompositions by
// word duration or by group.

#ifndef WORDSPOOF_DETECT_METRICS_H_
#define WORDSPOOF_DETECT_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordspoof/align.h"
#include "wordspoof/tag_codec.h"

namespace wordspoof {

inline constexpr double kDefaultHopSeconds = 0.016;

struct WordSpan {
  double start_s = 0.0;
  double end_s = 0.0;
  Label label = Label::kReal;
  std::string language;
  std::string text;

  double duration() const { return end_s - start_s; }
};

struct FrameScore {
  double p_real = 0.0;
  double p_fake = 0.0;
};

struct DetectionCounts {
  std::size_t fake_total = 0;
  std::size_t fake_missed = 0;   // FAKE reference word not flagged
  std::size_t real_total = 0;
  std::size_t real_flagged = 0;  // REAL reference word flagged as FAKE
  std::size_t hyp_insertions_flagged = 0;

  DetectionCounts& operator+=(const DetectionCounts& o);
  friend bool operator==(const DetectionCounts&,
                         const DetectionCounts&) = default;
};

// fake_missed / fake_total and real_flagged / real_total. Throw kEmptyClass
// on a zero denominator; the try_ forms return nullopt instead.
double far(const DetectionCounts& c);
double frr(const DetectionCounts& c);
std::optional<double> try_far(const DetectionCounts& c);
std::optional<double> try_frr(const DetectionCounts& c);

// Label pair for one alignment step. ref_label is absent for insertions,
// hyp_label for deletions.
struct WordOutcome {
  std::optional<std::size_t> ref_index;
  std::optional<Label> ref_label;
  std::optional<Label> hyp_label;
};

// One outcome per alignment step. Throws kAlignmentMismatch when the
// alignment does not cover both transcripts exactly.
std::vector<WordOutcome> word_outcomes(const TaggedTranscript& ref,
                                       const TaggedTranscript& hyp,
                                       const Alignment& a);

DetectionCounts tally(std::span<const WordOutcome> outcomes);

// Label correctness is judged per aligned word pair, independent of whether
// the texts match. A deleted FAKE word counts as missed; a deleted REAL word
// is not an error. Inserted FAKE words only feed hyp_insertions_flagged.
DetectionCounts score_detection(const TaggedTranscript& ref,
                                const TaggedTranscript& hyp,
                                const Alignment& a);

// Per-word record used for decompositions. Insertions carry no duration.
struct ScoredWord {
  WordOutcome outcome;
  std::optional<double> duration_s;
  std::string language;
  std::string generator;
};

// 0.0, 0.1, ..., 1.0 seconds; the last bucket is [1.0, inf).
std::vector<double> default_bucket_edges();

// Bucket i holds words with edges[i] <= duration < edges[i + 1]; the last
// bucket is open above and the first also takes durations below edges[0].
// Insertions are skipped. Only non-empty buckets appear in the result.
// Throws kNonMonotoneEdges unless edges are non-empty and strictly
// ascending.
std::map<std::size_t, DetectionCounts> bucket_by_duration(
    std::span<const ScoredWord> words, std::span<const double> edges);

std::string bucket_label(std::span<const double> edges, std::size_t bucket);

enum class GroupKey { kLanguage, kGenerator };

std::optional<GroupKey> parse_group_key(const std::string& name);

// Throws kMissingGroupKey for a word whose selected key is empty.
std::map<std::string, DetectionCounts> group_counts(
    std::span<const ScoredWord> words, GroupKey key);

// One label per hop-sized frame over [0, total_dur_s). A frame is FAKE when
// FAKE spans cover at least half of it. Throws kOverlappingSpans and
// kSpanOutOfRange.
std::vector<Label> frame_labels(std::span<const WordSpan> spans,
                                double total_dur_s,
                                double hop_s = kDefaultHopSeconds);

// Averages the scores of frames whose midpoint lies in [start_s, end_s);
// REAL only when mean p_real is strictly greater than mean p_fake. Throws
// kNoFramesInSpan when no frame midpoint falls inside the span.
Label pool_frame_scores(std::span<const FrameScore> scores,
                        const WordSpan& span,
                        double hop_s = kDefaultHopSeconds);

struct DetectionReport {
  DetectionCounts counts;
  EditCounts edits;
  std::optional<double> far;
  std::optional<double> frr;
  std::optional<double> wer;
  std::vector<double> bucket_edges;
  std::map<std::size_t, DetectionCounts> by_bucket;
  std::map<std::string, DetectionCounts> by_group;
  std::string group_key;
  std::size_t utterances = 0;
  std::vector<std::string> missing_hyp;    // scored as fully deleted
  std::vector<std::string> unmatched_hyp;  // hypothesis ids absent from ref
};

}  // namespace wordspoof

#endif  // WORDSPOOF_DETECT_METRICS_H_
