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

#ifndef WORDSPOOF_REPORT_H_
#define WORDSPOOF_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordspoof/align.h"
#include "wordspoof/detect_metrics.h"
#include "wordspoof/protocol.h"
#include "wordspoof/tag_codec.h"

namespace wordspoof {

struct ScoreOptions {
  NormalizationPolicy normalization;
  MarkerConfig markers;
  std::vector<double> bucket_edges;  // empty: no duration breakdown
  std::optional<GroupKey> group_by;
};

// Normalizes both sides, aligns once and returns per-word outcomes whose
// ref_index points into the un-normalized reference. Words that normalize
// away are left out of both the alignment and the outcomes.
std::vector<WordOutcome> score_pair(const TaggedTranscript& ref, const TaggedTranscript& hyp,
                                    const NormalizationPolicy& policy,
                                    EditCounts* edits = nullptr);

// Reference lines decode strictly, hypotheses leniently. A reference id with
// no hypothesis scores as fully deleted. With a manifest, per-word durations
// and utterance language/generator are taken from the entry whose key matches.
DetectionReport score_corpus(const std::vector<TaggedLine>& ref,
                             const std::vector<TaggedLine>& hyp,
                             const std::vector<ManifestEntry>* manifest,
                             const ScoreOptions& options);

using FrameTable = std::map<std::string, std::vector<FrameScore>>;

// CSV with header utt_id,frame_index,p_real,p_fake. Frame indices per id
// must cover 0..n-1 exactly once, in any order.
FrameTable read_frame_csv(const std::string& path);
FrameTable parse_frame_csv(const std::string& text);

// Word labels from frame scores over the manifest's output word spans.
// Words too short to own a frame midpoint use the frame under their centre.
// Entries without frames are left out (scored as deleted).
std::vector<TaggedLine> pooled_hypotheses(const std::vector<ManifestEntry>& manifest,
                                          const FrameTable& frames, double hop_s,
                                          const MarkerConfig& markers = {});

std::string report_table(const DetectionReport& r);
std::string report_json(const DetectionReport& r);
std::string report_csv(const DetectionReport& r);
std::string buckets_csv(const DetectionReport& r);
std::string groups_csv(const DetectionReport& r);

}  // namespace wordspoof

#endif  // WORDSPOOF_REPORT_H_
