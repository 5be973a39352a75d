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

#include "wordspoof/detect_metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wordspoof/error.h"

namespace wordspoof {
namespace {

// Absolute slack for comparisons of times expressed in seconds.
constexpr double kTimeEps = 1e-9;

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

}  // namespace

DetectionCounts& DetectionCounts::operator+=(const DetectionCounts& o) {
  fake_total += o.fake_total;
  fake_missed += o.fake_missed;
  real_total += o.real_total;
  real_flagged += o.real_flagged;
  hyp_insertions_flagged += o.hyp_insertions_flagged;
  return *this;
}

std::optional<double> try_far(const DetectionCounts& c) {
  if (c.fake_total == 0) return std::nullopt;
  return static_cast<double>(c.fake_missed) / static_cast<double>(c.fake_total);
}

std::optional<double> try_frr(const DetectionCounts& c) {
  if (c.real_total == 0) return std::nullopt;
  return static_cast<double>(c.real_flagged) / static_cast<double>(c.real_total);
}

double far(const DetectionCounts& c) {
  const auto r = try_far(c);
  if (!r) throw Error(ErrorKind::kEmptyClass, "FAR undefined: no FAKE reference words");
  return *r;
}

double frr(const DetectionCounts& c) {
  const auto r = try_frr(c);
  if (!r) throw Error(ErrorKind::kEmptyClass, "FRR undefined: no REAL reference words");
  return *r;
}

std::vector<WordOutcome> word_outcomes(const TaggedTranscript& ref,
                                       const TaggedTranscript& hyp,
                                       const Alignment& a) {
  std::vector<WordOutcome> out;
  out.reserve(a.steps.size());
  std::size_t next_ref = 0;
  std::size_t next_hyp = 0;
  auto mismatch = [](const std::string& what) {
    return Error(ErrorKind::kAlignmentMismatch, what);
  };
  for (const AlignmentStep& s : a.steps) {
    WordOutcome o;
    if (s.op != EditOp::kIns) {
      if (!s.ref_index || *s.ref_index != next_ref || next_ref >= ref.words.size()) {
        throw mismatch("reference index out of sequence at word " +
                       std::to_string(next_ref));
      }
      o.ref_index = next_ref;
      o.ref_label = ref.words[next_ref].label;
      ++next_ref;
    } else if (s.ref_index) {
      throw mismatch("insertion step carries a reference index");
    }
    if (s.op != EditOp::kDel) {
      if (!s.hyp_index || *s.hyp_index != next_hyp || next_hyp >= hyp.words.size()) {
        throw mismatch("hypothesis index out of sequence at word " +
                       std::to_string(next_hyp));
      }
      o.hyp_label = hyp.words[next_hyp].label;
      ++next_hyp;
    } else if (s.hyp_index) {
      throw mismatch("deletion step carries a hypothesis index");
    }
    out.push_back(o);
  }
  if (next_ref != ref.words.size() || next_hyp != hyp.words.size()) {
    throw mismatch("alignment covers " + std::to_string(next_ref) + "/" +
                   std::to_string(ref.words.size()) + " reference and " +
                   std::to_string(next_hyp) + "/" +
                   std::to_string(hyp.words.size()) + " hypothesis words");
  }
  return out;
}

DetectionCounts tally(std::span<const WordOutcome> outcomes) {
  DetectionCounts c;
  for (const WordOutcome& o : outcomes) {
    if (!o.ref_label) {
      if (o.hyp_label == Label::kFake) ++c.hyp_insertions_flagged;
      continue;
    }
    if (*o.ref_label == Label::kFake) {
      ++c.fake_total;
      if (o.hyp_label != Label::kFake) ++c.fake_missed;
    } else {
      ++c.real_total;
      if (o.hyp_label == Label::kFake) ++c.real_flagged;
    }
  }
  return c;
}

DetectionCounts score_detection(const TaggedTranscript& ref,
                                const TaggedTranscript& hyp,
                                const Alignment& a) {
  const auto outcomes = word_outcomes(ref, hyp, a);
  return tally(outcomes);
}

std::vector<double> default_bucket_edges() {
  std::vector<double> edges;
  for (int i = 0; i <= 10; ++i) edges.push_back(i / 10.0);
  return edges;
}

std::map<std::size_t, DetectionCounts> bucket_by_duration(
    std::span<const ScoredWord> words, std::span<const double> edges) {
  if (edges.empty()) {
    throw Error(ErrorKind::kNonMonotoneEdges, "no bucket edges given");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw Error(ErrorKind::kNonMonotoneEdges,
                  "bucket edges must be strictly ascending");
    }
  }
  std::map<std::size_t, DetectionCounts> buckets;
  for (const ScoredWord& w : words) {
    if (!w.outcome.ref_label) continue;
    if (!w.duration_s) {
      throw Error(ErrorKind::kInvalidArgument,
                  "reference word without a duration");
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), *w.duration_s);
    const std::size_t bucket =
        it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    const WordOutcome one[] = {w.outcome};
    buckets[bucket] += tally(one);
  }
  return buckets;
}

std::string bucket_label(std::span<const double> edges, std::size_t bucket) {
  if (bucket >= edges.size()) return "?";
  const std::string lo = fmt_seconds(edges[bucket]);
  if (bucket + 1 == edges.size()) return "[" + lo + ",inf)";
  return "[" + lo + "," + fmt_seconds(edges[bucket + 1]) + ")";
}

std::optional<GroupKey> parse_group_key(const std::string& name) {
  if (name == "language") return GroupKey::kLanguage;
  if (name == "generator") return GroupKey::kGenerator;
  return std::nullopt;
}

std::map<std::string, DetectionCounts> group_counts(
    std::span<const ScoredWord> words, GroupKey key) {
  std::map<std::string, DetectionCounts> groups;
  for (const ScoredWord& w : words) {
    const std::string& k =
        key == GroupKey::kLanguage ? w.language : w.generator;
    if (k.empty()) {
      throw Error(ErrorKind::kMissingGroupKey,
                  key == GroupKey::kLanguage ? "word without a language"
                                             : "word without a generator");
    }
    const WordOutcome one[] = {w.outcome};
    groups[k] += tally(one);
  }
  return groups;
}

std::vector<Label> frame_labels(std::span<const WordSpan> spans,
                                double total_dur_s, double hop_s) {
  if (!(hop_s > 0.0) || !(total_dur_s >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "hop and duration must be positive");
  }
  std::vector<WordSpan> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const WordSpan& a, const WordSpan& b) { return a.start_s < b.start_s; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const WordSpan& s = sorted[i];
    if (s.start_s < -kTimeEps || !(s.end_s > s.start_s) ||
        s.end_s > total_dur_s + kTimeEps) {
      throw Error(ErrorKind::kSpanOutOfRange,
                  "span [" + fmt_seconds(s.start_s) + ", " + fmt_seconds(s.end_s) +
                      ") outside [0, " + fmt_seconds(total_dur_s) + "]");
    }
    if (i > 0 && s.start_s < sorted[i - 1].end_s - kTimeEps) {
      throw Error(ErrorKind::kOverlappingSpans,
                  "span starting at " + fmt_seconds(s.start_s) +
                      " overlaps its predecessor");
    }
  }

  const auto n_frames =
      static_cast<std::size_t>(std::max(0.0, std::ceil(total_dur_s / hop_s - kTimeEps)));
  std::vector<double> fake_cover(n_frames, 0.0);
  for (const WordSpan& s : sorted) {
    if (s.label != Label::kFake) continue;
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(s.start_s / hop_s)));
    for (std::size_t k = first; k < n_frames; ++k) {
      const double lo = k * hop_s;
      const double hi = (k + 1) * hop_s;
      if (lo >= s.end_s) break;
      const double overlap = std::min(hi, s.end_s) - std::max(lo, s.start_s);
      if (overlap > 0.0) fake_cover[k] += overlap;
    }
  }
  std::vector<Label> labels(n_frames, Label::kReal);
  for (std::size_t k = 0; k < n_frames; ++k) {
    if (fake_cover[k] >= 0.5 * hop_s - kTimeEps) labels[k] = Label::kFake;
  }
  return labels;
}

Label pool_frame_scores(std::span<const FrameScore> scores,
                        const WordSpan& span, double hop_s) {
  if (!(hop_s > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "hop must be positive");
  }
  double sum_real = 0.0;
  double sum_fake = 0.0;
  std::size_t n = 0;
  // Midpoints strictly inside the span; one sitting on a boundary is shared
  // half-and-half with the neighbour and is left out.
  constexpr double kEdge = 1e-7;
  const double first = std::floor(span.start_s / hop_s - 0.5);
  for (auto k = static_cast<std::size_t>(std::max(0.0, first)); k < scores.size(); ++k) {
    const double mid = (k + 0.5) * hop_s;
    if (mid <= span.start_s + kEdge) continue;
    if (mid >= span.end_s - kEdge) break;
    const FrameScore& f = scores[k];
    if (!(f.p_real >= 0.0 && f.p_real <= 1.0 && f.p_fake >= 0.0 && f.p_fake <= 1.0) ||
        std::abs(f.p_real + f.p_fake - 1.0) > 1e-6) {
      throw Error(ErrorKind::kInvalidArgument,
                  "frame " + std::to_string(k) + " is not a probability pair");
    }
    sum_real += f.p_real;
    sum_fake += f.p_fake;
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorKind::kNoFramesInSpan,
                "no frame midpoint in [" + fmt_seconds(span.start_s) + ", " +
                    fmt_seconds(span.end_s) + ")");
  }
  return sum_real > sum_fake ? Label::kReal : Label::kFake;
}

}  // namespace wordspoof
