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

#include "wordspoof/protocol.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wordspoof/error.h"
#include "wordspoof/splice.h"
#include "wordspoof/tag_codec.h"

namespace wordspoof {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

const char* status_name(EntryStatus s) {
  return s == EntryStatus::kOk ? "OK" : "SKIPPED";
}

double number_field(const Json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end() || !it->is_number()) {
    throw Error(ErrorKind::kFormat, std::string("missing numeric field '") + name + "'");
  }
  return it->get<double>();
}

std::string string_field(const Json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorKind::kFormat, std::string("missing string field '") + name + "'");
  }
  return it->get<std::string>();
}

Json parse_object(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kFormat, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::kFormat, "expected a JSON object");
  return j;
}

// Uniform integer in [0, n) by rejection; std distributions are not portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed: " + path);
  return lines;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

// Samples [begin, end) of a word; the same rounding the splicer uses.
std::pair<std::size_t, std::size_t> word_samples(const Waveform& w, const WordSpan& s) {
  return {w.index_at(s.start_s), w.index_at(s.end_s)};
}

Waveform load_replacement(const BuildConfig& cfg, const UtteranceRecord& rec,
                          const std::string& generator, std::size_t index) {
  const fs::path p =
      fs::path(*cfg.external_dir) / generator / rec.utt_id / (std::to_string(index) + ".wav");
  if (!fs::exists(p)) {
    throw Error(ErrorKind::kIo, "missing external replacement " + p.string());
  }
  return read_wav(p.string());
}

}  // namespace

bool is_valid_id(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return c > 0x20 && c != 0x7f && c != '/' && c != '\\';
  });
}

UtteranceRecord parse_utterance(std::string_view json_line, const std::string& base_dir) {
  const Json j = parse_object(json_line);
  UtteranceRecord rec;
  rec.utt_id = string_field(j, "utt_id");
  if (!is_valid_id(rec.utt_id)) {
    throw Error(ErrorKind::kFormat, "invalid utt_id '" + rec.utt_id + "'");
  }
  rec.audio_path = string_field(j, "audio");
  if (!base_dir.empty() && fs::path(rec.audio_path).is_relative()) {
    rec.audio_path = (fs::path(base_dir) / rec.audio_path).string();
  }
  if (j.contains("language")) rec.language = string_field(j, "language");
  if (j.contains("sample_rate")) {
    const double sr = number_field(j, "sample_rate");
    if (!(sr >= 1.0) || sr != std::floor(sr)) {
      throw Error(ErrorKind::kFormat, "invalid sample_rate");
    }
    rec.sample_rate_hz = static_cast<int>(sr);
  }
  const auto words = j.find("words");
  if (words == j.end() || !words->is_array()) {
    throw Error(ErrorKind::kFormat, "missing array field 'words'");
  }
  double prev_end = 0.0;
  for (const Json& w : *words) {
    if (!w.is_object()) throw Error(ErrorKind::kFormat, "word entries must be objects");
    WordSpan s;
    s.text = string_field(w, "text");
    s.start_s = number_field(w, "start");
    s.end_s = number_field(w, "end");
    s.language = rec.language;
    if (!(s.start_s >= 0.0) || !(s.end_s >= s.start_s) || !std::isfinite(s.end_s)) {
      throw Error(ErrorKind::kFormat, "word '" + s.text + "' has an invalid time span");
    }
    if (s.start_s < prev_end) {
      throw Error(ErrorKind::kFormat, "word '" + s.text + "' overlaps its predecessor");
    }
    prev_end = s.end_s;
    rec.words.push_back(std::move(s));
  }
  return rec;
}

std::vector<UtteranceRecord> read_corpus(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  const std::string base = fs::path(path).parent_path().string();
  std::vector<UtteranceRecord> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    try {
      out.push_back(parse_utterance(lines[i], base));
    } catch (const Error& e) {
      throw Error(ErrorKind::kFormat,
                  path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

std::string entry_key(std::string_view utt_id, std::string_view generator) {
  return std::string(utt_id) + "-" + std::string(generator);
}

std::string manifest_line(const ManifestEntry& e) {
  Json j;
  j["key"] = e.key;
  j["utt_id"] = e.utt_id;
  j["generator"] = e.generator;
  j["language"] = e.language;
  j["status"] = status_name(e.status);
  j["skip_reason"] = e.status == EntryStatus::kOk ? Json(nullptr) : Json(e.skip_reason);
  j["seed"] = e.seed;
  j["selected_indices"] = e.selected_indices;
  j["source_audio"] = e.source_audio;
  j["output_audio"] = e.output_audio;
  j["tagged_ref"] = e.tagged_ref;
  j["duration_s"] = e.duration_s;
  j["sample_rate"] = e.sample_rate_hz;
  Json words = Json::array();
  for (const WordSpan& w : e.words) {
    words.push_back({{"text", w.text},
                     {"start", w.start_s},
                     {"end", w.end_s},
                     {"label", label_name(w.label)}});
  }
  j["words"] = std::move(words);
  return j.dump();
}

ManifestEntry parse_manifest_line(std::string_view line) {
  const Json j = parse_object(line);
  ManifestEntry e;
  e.key = string_field(j, "key");
  e.utt_id = string_field(j, "utt_id");
  e.generator = string_field(j, "generator");
  e.language = j.contains("language") ? string_field(j, "language") : "";
  const std::string status = string_field(j, "status");
  if (status == "OK") {
    e.status = EntryStatus::kOk;
  } else if (status == "SKIPPED") {
    e.status = EntryStatus::kSkipped;
    if (j.contains("skip_reason") && j["skip_reason"].is_string()) {
      e.skip_reason = j["skip_reason"].get<std::string>();
    }
  } else {
    throw Error(ErrorKind::kFormat, "unknown status '" + status + "'");
  }
  try {
    e.seed = j.value("seed", std::uint64_t{0});
    e.selected_indices = j.value("selected_indices", std::vector<std::size_t>{});
    e.source_audio = j.value("source_audio", std::string());
    e.output_audio = j.value("output_audio", std::string());
    e.tagged_ref = j.value("tagged_ref", std::string());
    e.duration_s = j.value("duration_s", 0.0);
    e.sample_rate_hz = j.value("sample_rate", kDefaultSampleRate);
  } catch (const Json::exception& ex) {
    throw Error(ErrorKind::kFormat, ex.what());
  }
  if (j.contains("words")) {
    if (!j["words"].is_array()) throw Error(ErrorKind::kFormat, "'words' must be an array");
    for (const Json& w : j["words"]) {
      WordSpan s;
      s.text = string_field(w, "text");
      s.start_s = number_field(w, "start");
      s.end_s = number_field(w, "end");
      s.language = e.language;
      const std::string label = w.contains("label") ? string_field(w, "label") : "REAL";
      if (label == "FAKE") {
        s.label = Label::kFake;
      } else if (label != "REAL") {
        throw Error(ErrorKind::kFormat, "unknown label '" + label + "'");
      }
      e.words.push_back(std::move(s));
    }
  }
  return e;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<ManifestEntry> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    try {
      out.push_back(parse_manifest_line(lines[i]));
    } catch (const Error& e) {
      throw Error(ErrorKind::kFormat,
                  path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

void BuildConfig::validate() const {
  if (words_min < 1 || words_max < words_min) {
    throw Error(ErrorKind::kInvalidArgument, "need 1 <= words_min <= words_max");
  }
  if (!(fade_s >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "fade must be non-negative");
  if (generators.empty()) throw Error(ErrorKind::kInvalidArgument, "no generators given");
  std::set<std::string> seen;
  for (const std::string& g : generators) {
    if (!is_valid_id(g)) throw Error(ErrorKind::kInvalidArgument, "invalid generator id '" + g + "'");
    if (!seen.insert(g).second) {
      throw Error(ErrorKind::kInvalidArgument, "generator '" + g + "' listed twice");
    }
    if (g != kBuiltinGenerator && !external_dir) {
      throw Error(ErrorKind::kInvalidArgument,
                  "generator '" + g + "' needs an external replacement directory");
    }
  }
  synth.stft.validate();
  if (synth.gl.iters == 0) throw Error(ErrorKind::kInvalidArgument, "iters must be positive");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view utt_id,
                          std::string_view generator) {
  // FNV-1a over "<master>\x1f<utt_id>\x1f<generator>", then a splitmix64 finish.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  feed(std::to_string(master_seed));
  feed("\x1f");
  feed(utt_id);
  feed("\x1f");
  feed(generator);
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

std::vector<std::size_t> select_words(const UtteranceRecord& rec, std::uint64_t seed,
                                      std::size_t min_words, std::size_t max_words) {
  const std::size_t n = rec.words.size();
  if (n == 0) throw Error(ErrorKind::kEmptyUtterance, "utterance " + rec.utt_id + " has no words");
  if (min_words < 1 || max_words < min_words) {
    throw Error(ErrorKind::kInvalidArgument, "need 1 <= min <= max");
  }
  const std::size_t lo = std::min(min_words, n);
  const std::size_t hi = std::min(max_words, n);
  std::mt19937_64 rng(seed);
  const std::size_t k = lo + bounded(rng, hi - lo + 1);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + bounded(rng, n - i)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

ManifestEntry build_entry(const UtteranceRecord& rec, const std::string& generator,
                          const BuildConfig& cfg, const std::string& out_dir) {
  ManifestEntry e;
  e.key = entry_key(rec.utt_id, generator);
  e.utt_id = rec.utt_id;
  e.generator = generator;
  e.language = rec.language;
  e.seed = derive_seed(cfg.master_seed, rec.utt_id, generator);
  e.source_audio = rec.audio_path;

  Waveform out;
  try {
    e.selected_indices = select_words(rec, e.seed, cfg.words_min, cfg.words_max);
    const Waveform src = read_wav(rec.audio_path);
    if (rec.sample_rate_hz && *rec.sample_rate_hz != src.sample_rate_hz) {
      throw Error(ErrorKind::kSampleRateMismatch,
                  "audio is at " + std::to_string(src.sample_rate_hz) + " Hz, corpus declares " +
                      std::to_string(*rec.sample_rate_hz) + " Hz");
    }
    for (const WordSpan& w : rec.words) {
      if (word_samples(src, w).second > src.size()) {
        throw Error(ErrorKind::kSpanOutOfRange,
                    "word '" + w.text + "' ends after the audio (" +
                        std::to_string(src.duration()) + " s)");
      }
    }

    std::vector<SpliceOp> ops;
    Waveform resynth;
    if (generator == kBuiltinGenerator) {
      CopySynthOptions synth = cfg.synth;
      synth.gl.seed = e.seed;
      resynth = copy_synth(src, synth);
    }
    for (std::size_t idx : e.selected_indices) {
      SpliceOp op;
      op.span = rec.words[idx];
      if (generator == kBuiltinGenerator) {
        const auto [b, t] = word_samples(src, op.span);
        op.replacement.sample_rate_hz = src.sample_rate_hz;
        op.replacement.samples.assign(resynth.samples.begin() + static_cast<std::ptrdiff_t>(b),
                                      resynth.samples.begin() + static_cast<std::ptrdiff_t>(t));
      } else {
        op.replacement = load_replacement(cfg, rec, generator, idx);
      }
      ops.push_back(std::move(op));
    }

    SpliceOptions so;
    so.fade_s = cfg.fade_s;
    SpliceResult spliced = overlap_add_replace(src, ops, so);
    if (!spliced.wave.all_finite()) {
      throw Error(ErrorKind::kInvalidArgument, "spliced output is not finite");
    }

    // Re-time words on the output timeline. Unchanged lengths keep exact times.
    TaggedTranscript tagged;
    const double sr = src.sample_rate_hz;
    std::ptrdiff_t shift = 0;
    std::size_t next_op = 0;
    for (std::size_t i = 0; i < rec.words.size(); ++i) {
      WordSpan w = rec.words[i];
      const bool fake = next_op < ops.size() && e.selected_indices[next_op] == i;
      if (fake) {
        const auto [b, t] = word_samples(src, w);
        const auto [ob, ot] = spliced.op_ranges[next_op];
        const auto span_len = static_cast<std::ptrdiff_t>(t - b);
        const auto out_len = static_cast<std::ptrdiff_t>(ot - ob);
        if (out_len != span_len || shift != 0) {
          w.start_s = static_cast<double>(ob) / sr;
          w.end_s = static_cast<double>(ot) / sr;
        }
        shift += out_len - span_len;
        w.label = Label::kFake;
        ++next_op;
      } else if (shift != 0) {
        w.start_s += static_cast<double>(shift) / sr;
        w.end_s += static_cast<double>(shift) / sr;
      }
      tagged.words.push_back({w.text, w.label});
      e.words.push_back(std::move(w));
    }
    e.tagged_ref = encode(tagged);
    e.sample_rate_hz = spliced.wave.sample_rate_hz;
    e.duration_s = spliced.wave.duration();
    out = std::move(spliced.wave);
  } catch (const Error& err) {
    e.status = EntryStatus::kSkipped;
    e.skip_reason = err.what();
    e.words.clear();
    e.tagged_ref.clear();
    return e;
  }

  e.output_audio = "wav/" + e.key + ".wav";
  if (!out_dir.empty()) write_wav((fs::path(out_dir) / e.output_audio).string(), out);
  return e;
}

BuildSummary build_dataset(std::span<const UtteranceRecord> corpus, const BuildConfig& cfg,
                           const std::string& out_dir) {
  cfg.validate();
  std::set<std::string> ids;
  for (const UtteranceRecord& r : corpus) {
    if (!ids.insert(r.utt_id).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate utt_id '" + r.utt_id + "'");
    }
  }
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "wav", ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + out_dir + ": " + ec.message());

  struct Item {
    const UtteranceRecord* rec;
    const std::string* generator;
  };
  std::vector<Item> items;
  for (const UtteranceRecord& r : corpus) {
    for (const std::string& g : cfg.generators) items.push_back({&r, &g});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.rec->utt_id, *a.generator) < std::tie(b.rec->utt_id, *b.generator);
  });

  BuildSummary summary;
  summary.entries.resize(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < items.size();) {
      try {
        summary.entries[i] = build_entry(*items[i].rec, *items[i].generator, cfg, out_dir);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        failed = true;
      }
    }
  };
  std::size_t jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (fatal) std::rethrow_exception(fatal);

  std::string manifest;
  std::string refs;
  for (const ManifestEntry& e : summary.entries) {
    manifest += manifest_line(e);
    manifest += '\n';
    if (e.status == EntryStatus::kOk) {
      ++summary.ok;
      refs += e.key + '\t' + e.tagged_ref + '\n';
    } else {
      ++summary.skipped;
    }
  }
  write_text(fs::path(out_dir) / "manifest.jsonl", manifest);
  write_text(fs::path(out_dir) / "ref.txt", refs);
  return summary;
}

}  // namespace wordspoof
