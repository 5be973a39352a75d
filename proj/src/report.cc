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

#include "wordspoof/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wordspoof/error.h"

namespace wordspoof {
namespace {

using Json = nlohmann::ordered_json;

struct Normalized {
  TaggedTranscript words;
  std::vector<std::size_t> origin;  // index in the source transcript
};

Normalized normalize_tagged(const TaggedTranscript& t, const NormalizationPolicy& policy) {
  Normalized n;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    const std::string one[] = {t.words[i].text};
    for (std::string& s : normalize(one, policy)) {
      n.words.words.push_back({std::move(s), t.words[i].label});
      n.origin.push_back(i);
    }
  }
  return n;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

std::string pct(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * *v);
  return buf;
}

Json rate(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json counts_json(const DetectionCounts& c) {
  return Json{{"fake_total", c.fake_total},
              {"fake_missed", c.fake_missed},
              {"far", rate(try_far(c))},
              {"real_total", c.real_total},
              {"real_flagged", c.real_flagged},
              {"frr", rate(try_frr(c))},
              {"hyp_insertions_flagged", c.hyp_insertions_flagged}};
}

std::string counts_csv(const DetectionCounts& c) {
  return std::to_string(c.fake_total) + "," + std::to_string(c.fake_missed) + "," +
         fmt(try_far(c)) + "," + std::to_string(c.real_total) + "," +
         std::to_string(c.real_flagged) + "," + fmt(try_frr(c)) + "," +
         std::to_string(c.hyp_insertions_flagged);
}

constexpr const char* kCountsHeader =
    "fake_total,fake_missed,far,real_total,real_flagged,frr,hyp_insertions_flagged";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(s[i])) ++i;
  return s.substr(i);
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kFormat,
              "line " + std::to_string(line) + ": '" + s + "' is not a number");
}

}  // namespace

std::vector<WordOutcome> score_pair(const TaggedTranscript& ref, const TaggedTranscript& hyp,
                                    const NormalizationPolicy& policy, EditCounts* edits) {
  const Normalized r = normalize_tagged(ref, policy);
  const Normalized h = normalize_tagged(hyp, policy);
  const std::vector<std::string> rt = r.words.texts();
  const std::vector<std::string> ht = h.words.texts();
  const Alignment a = align_words(rt, ht);
  if (edits) *edits = a.counts;
  std::vector<WordOutcome> out = word_outcomes(r.words, h.words, a);
  for (WordOutcome& o : out) {
    if (o.ref_index) o.ref_index = r.origin[*o.ref_index];
  }
  return out;
}

DetectionReport score_corpus(const std::vector<TaggedLine>& ref,
                             const std::vector<TaggedLine>& hyp,
                             const std::vector<ManifestEntry>* manifest,
                             const ScoreOptions& options) {
  MarkerConfig strict = options.markers;
  strict.lenient = false;
  MarkerConfig lenient = options.markers;
  lenient.lenient = true;

  std::map<std::string, const std::string*> hyp_by_id;
  for (const auto& [id, text] : hyp) {
    if (!hyp_by_id.emplace(id, &text).second) {
      throw Error(ErrorKind::kFormat, "duplicate hypothesis id '" + id + "'");
    }
  }
  std::map<std::string, const ManifestEntry*> entries;
  if (manifest) {
    for (const ManifestEntry& e : *manifest) entries.emplace(e.key, &e);
  }

  DetectionReport report;
  report.bucket_edges = options.bucket_edges;
  std::vector<ScoredWord> scored;
  std::set<std::string> ref_ids;
  for (const auto& [id, text] : ref) {
    if (!ref_ids.insert(id).second) {
      throw Error(ErrorKind::kFormat, "duplicate reference id '" + id + "'");
    }
    TaggedTranscript r;
    try {
      r = decode(text, strict);
    } catch (const Error& e) {
      throw Error(e.kind(), "reference '" + id + "': " + e.what());
    }
    TaggedTranscript h;
    const auto hit = hyp_by_id.find(id);
    if (hit == hyp_by_id.end()) {
      report.missing_hyp.push_back(id);
    } else {
      h = decode(*hit->second, lenient);
    }

    const ManifestEntry* entry = nullptr;
    if (const auto it = entries.find(id); it != entries.end()) entry = it->second;
    const bool timed = entry && entry->words.size() == r.words.size();

    EditCounts edits;
    const std::vector<WordOutcome> outcomes = score_pair(r, h, options.normalization, &edits);
    report.edits += edits;
    report.counts += tally(outcomes);
    for (const WordOutcome& o : outcomes) {
      ScoredWord w;
      w.outcome = o;
      if (entry) {
        w.language = entry->language;
        w.generator = entry->generator;
      }
      if (timed && o.ref_index) w.duration_s = entry->words[*o.ref_index].duration();
      scored.push_back(std::move(w));
    }
    ++report.utterances;
  }
  for (const auto& [id, text] : hyp) {
    if (!ref_ids.count(id)) report.unmatched_hyp.push_back(id);
  }

  report.far = try_far(report.counts);
  report.frr = try_frr(report.counts);
  if (report.edits.ref_words() > 0) report.wer = wer(Alignment{{}, report.edits}, report.edits.ref_words());
  if (!options.bucket_edges.empty()) {
    report.by_bucket = bucket_by_duration(scored, options.bucket_edges);
  }
  if (options.group_by) {
    report.group_key = *options.group_by == GroupKey::kLanguage ? "language" : "generator";
    report.by_group = group_counts(scored, *options.group_by);
  }
  return report;
}

FrameTable parse_frame_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  std::map<std::string, std::map<std::size_t, FrameScore>> raw;
  bool header = false;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (!header) {
      if (f != std::vector<std::string>{"utt_id", "frame_index", "p_real", "p_fake"}) {
        throw Error(ErrorKind::kFormat, "frame CSV header must be utt_id,frame_index,p_real,p_fake");
      }
      header = true;
      continue;
    }
    if (f.size() != 4) {
      throw Error(ErrorKind::kFormat, "line " + std::to_string(n) + ": expected 4 fields");
    }
    const double idx = parse_double(f[1], n);
    if (!(idx >= 0.0) || idx != std::floor(idx)) {
      throw Error(ErrorKind::kFormat, "line " + std::to_string(n) + ": bad frame index");
    }
    FrameScore s{parse_double(f[2], n), parse_double(f[3], n)};
    if (!raw[f[0]].emplace(static_cast<std::size_t>(idx), s).second) {
      throw Error(ErrorKind::kFormat, "line " + std::to_string(n) + ": duplicate frame");
    }
  }
  FrameTable out;
  for (auto& [id, frames] : raw) {
    std::vector<FrameScore> v;
    for (const auto& [idx, s] : frames) {
      if (idx != v.size()) {
        throw Error(ErrorKind::kFormat, "frames of '" + id + "' are not contiguous from 0");
      }
      v.push_back(s);
    }
    out.emplace(id, std::move(v));
  }
  return out;
}

FrameTable read_frame_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_frame_csv(ss.str());
}

std::vector<TaggedLine> pooled_hypotheses(const std::vector<ManifestEntry>& manifest,
                                          const FrameTable& frames, double hop_s,
                                          const MarkerConfig& markers) {
  std::vector<TaggedLine> out;
  for (const ManifestEntry& e : manifest) {
    if (e.status != EntryStatus::kOk) continue;
    const auto it = frames.find(e.key);
    if (it == frames.end()) continue;
    const std::vector<FrameScore>& f = it->second;
    TaggedTranscript t;
    for (const WordSpan& w : e.words) {
      Label label;
      try {
        label = pool_frame_scores(f, w, hop_s);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kNoFramesInSpan || f.empty()) throw;
        const double mid = 0.5 * (w.start_s + w.end_s);
        const auto k = std::min(static_cast<std::size_t>(std::max(0.0, mid / hop_s)), f.size() - 1);
        label = f[k].p_real > f[k].p_fake ? Label::kReal : Label::kFake;
      }
      t.words.push_back({w.text, label});
    }
    out.emplace_back(e.key, encode(t, markers));
  }
  return out;
}

std::string report_table(const DetectionReport& r) {
  std::ostringstream o;
  o << "utterances          " << r.utterances << "\n";
  o << "reference words     " << r.edits.ref_words() << "\n";
  o << "hits/subs/ins/dels  " << r.edits.hits << "/" << r.edits.subs << "/" << r.edits.ins
    << "/" << r.edits.dels << "\n";
  o << "WER                 " << pct(r.wer) << "\n";
  o << "FAR                 " << pct(r.far) << "  (" << r.counts.fake_missed << "/"
    << r.counts.fake_total << " synthetic words accepted)\n";
  o << "FRR                 " << pct(r.frr) << "  (" << r.counts.real_flagged << "/"
    << r.counts.real_total << " real words rejected)\n";
  o << "flagged insertions  " << r.counts.hyp_insertions_flagged << "\n";
  if (!r.missing_hyp.empty()) {
    o << "missing hypotheses  " << r.missing_hyp.size() << " (scored as deleted)\n";
  }
  if (!r.unmatched_hyp.empty()) {
    o << "unmatched hyp ids   " << r.unmatched_hyp.size() << " (ignored)\n";
  }
  auto row = [&o](const std::string& name, const DetectionCounts& c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-14s %6zu %8s %6zu %8s\n", name.c_str(), c.fake_total,
                  pct(try_far(c)).c_str(), c.real_total, pct(try_frr(c)).c_str());
    o << buf;
  };
  if (!r.bucket_edges.empty()) {
    o << "\nby duration         fake      FAR   real      FRR\n";
    for (std::size_t b = 0; b < r.bucket_edges.size(); ++b) {
      const auto it = r.by_bucket.find(b);
      row(bucket_label(r.bucket_edges, b), it == r.by_bucket.end() ? DetectionCounts{} : it->second);
    }
  }
  if (!r.by_group.empty()) {
    o << "\nby " << r.group_key << "\n";
    for (const auto& [name, c] : r.by_group) row(name, c);
  }
  return o.str();
}

std::string report_json(const DetectionReport& r) {
  Json j;
  j["utterances"] = r.utterances;
  j["edits"] = {{"hits", r.edits.hits},
                {"subs", r.edits.subs},
                {"ins", r.edits.ins},
                {"dels", r.edits.dels},
                {"ref_words", r.edits.ref_words()}};
  j["wer"] = rate(r.wer);
  j["detection"] = counts_json(r.counts);
  j["missing_hyp"] = r.missing_hyp;
  j["unmatched_hyp"] = r.unmatched_hyp;
  if (!r.bucket_edges.empty()) {
    Json b = Json::array();
    for (std::size_t i = 0; i < r.bucket_edges.size(); ++i) {
      const auto it = r.by_bucket.find(i);
      Json row = counts_json(it == r.by_bucket.end() ? DetectionCounts{} : it->second);
      row["bucket"] = bucket_label(r.bucket_edges, i);
      b.push_back(std::move(row));
    }
    j["by_duration"] = std::move(b);
  }
  if (!r.group_key.empty()) {
    Json g = Json::object();
    for (const auto& [name, c] : r.by_group) g[name] = counts_json(c);
    j["by_" + r.group_key] = std::move(g);
  }
  return j.dump(2) + "\n";
}

std::string report_csv(const DetectionReport& r) {
  std::string s = "utterances,ref_words,hits,subs,ins,dels,wer,";
  s += kCountsHeader;
  s += ",missing_hyp\n";
  s += std::to_string(r.utterances) + "," + std::to_string(r.edits.ref_words()) + "," +
       std::to_string(r.edits.hits) + "," + std::to_string(r.edits.subs) + "," +
       std::to_string(r.edits.ins) + "," + std::to_string(r.edits.dels) + "," + fmt(r.wer) +
       "," + counts_csv(r.counts) + "," + std::to_string(r.missing_hyp.size()) + "\n";
  return s;
}

std::string buckets_csv(const DetectionReport& r) {
  std::string s = "bucket,lo_s,hi_s,";
  s += kCountsHeader;
  s += "\n";
  for (std::size_t b = 0; b < r.bucket_edges.size(); ++b) {
    const auto it = r.by_bucket.find(b);
    const std::string hi = b + 1 < r.bucket_edges.size() ? fmt(r.bucket_edges[b + 1]) : "inf";
    s += "\"" + bucket_label(r.bucket_edges, b) + "\"," + fmt(r.bucket_edges[b]) + "," + hi +
         "," + counts_csv(it == r.by_bucket.end() ? DetectionCounts{} : it->second) + "\n";
  }
  return s;
}

std::string groups_csv(const DetectionReport& r) {
  std::string s = (r.group_key.empty() ? std::string("group") : r.group_key) + ",";
  s += kCountsHeader;
  s += "\n";
  for (const auto& [name, c] : r.by_group) s += name + "," + counts_csv(c) + "\n";
  return s;
}

}  // namespace wordspoof
