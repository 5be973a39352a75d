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

#include "wordspoof/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wordspoof/error.h"
#include "wordspoof/gl_vocoder.h"
#include "wordspoof/protocol.h"
#include "wordspoof/report.h"
#include "wordspoof/splice.h"
#include "wordspoof/tag_codec.h"
#include "wordspoof/waveform.h"

namespace wordspoof {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Runs the read phase then the write phase. Read failures are usage errors,
// write-side I/O failures are fatal.
int staged(std::ostream& err, const std::function<void()>& read,
           const std::function<void()>& write) {
  try {
    read();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    write();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kIo ? kExitIo : kExitUsage;
  }
  return kExitOk;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<double> parse_edges(const std::string& s) {
  if (s == "default") return default_bucket_edges();
  std::vector<double> edges;
  for (const std::string& f : split(s, ',')) {
    try {
      std::size_t used = 0;
      edges.push_back(std::stod(f, &used));
      if (used != f.size()) throw std::invalid_argument(f);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "bad bucket edge '" + f + "'");
    }
  }
  return edges;
}

struct SynthFlags {
  std::size_t iters = 60;
  std::size_t n_fft = 1024;
  std::size_t hop = 256;
  std::size_t mel = 0;
  std::uint64_t seed = 0;
  bool random_phase = false;

  void add(CLI::App* app, bool with_seed) {
    app->add_option("--iters", iters, "Griffin-Lim iterations");
    app->add_option("--nfft", n_fft, "FFT size (power of two)");
    app->add_option("--hop", hop, "STFT hop in samples");
    app->add_option("--mel", mel, "Mel bands for the lossy path (0 = linear)");
    if (with_seed) {
      app->add_option("--seed", seed, "Seed for random phase init");
      app->add_flag("--random-phase", random_phase, "Start from random instead of zero phase");
    }
  }

  CopySynthOptions options() const {
    CopySynthOptions o;
    o.stft = {n_fft, hop};
    o.gl.iters = iters;
    o.gl.seed = seed;
    o.gl.init = random_phase ? PhaseInit::kRandom : PhaseInit::kZero;
    o.mel_bands = mel;
    return o;
  }
};

struct BuildFlags {
  std::string corpus;
  std::string out;
  std::uint64_t seed = 0;
  std::string generators = "gl";
  double fade_ms = 10.0;
  std::size_t words_min = 1;
  std::size_t words_max = 5;
  std::size_t jobs = 0;
  std::string external_dir;
  SynthFlags synth;
};

struct ScoreFlags {
  std::string ref;
  std::string hyp;
  std::string manifest;
  std::string buckets;
  std::string group_by;
  bool lowercase = true;
  bool strip_punct = false;
  bool pool = false;
  std::string frame_csv;
  double hop_ms = 16.0;
  std::string out;
};

struct CopySynthFlags {
  std::string in;
  std::string out;
  bool peak = false;
  SynthFlags synth;
};

struct SpliceFlags {
  std::string in;
  std::string out;
  std::string spec;
  double fade_ms = 10.0;
  bool keep_length = false;
};

int cmd_build(const BuildFlags& f, bool json, std::ostream& out, std::ostream& err) {
  std::vector<UtteranceRecord> corpus;
  BuildConfig cfg;
  BuildSummary summary;
  return staged(
      err,
      [&] {
        cfg.master_seed = f.seed;
        cfg.generators = split(f.generators, ',');
        cfg.fade_s = f.fade_ms / 1000.0;
        cfg.words_min = f.words_min;
        cfg.words_max = f.words_max;
        cfg.jobs = f.jobs;
        if (!f.external_dir.empty()) cfg.external_dir = f.external_dir;
        cfg.synth = f.synth.options();
        cfg.validate();
        corpus = read_corpus(f.corpus);
      },
      [&] {
        summary = build_dataset(corpus, cfg, f.out);
        if (json) {
          Json j;
          j["entries"] = summary.entries.size();
          j["ok"] = summary.ok;
          j["skipped"] = summary.skipped;
          j["manifest"] = (fs::path(f.out) / "manifest.jsonl").string();
          out << j.dump() << "\n";
        } else {
          out << "built " << summary.entries.size() << " entries (" << summary.ok << " ok, "
              << summary.skipped << " skipped) in " << f.out << "\n";
        }
        for (const ManifestEntry& e : summary.entries) {
          if (e.status == EntryStatus::kSkipped) {
            err << "skipped " << e.key << ": " << e.skip_reason << "\n";
          }
        }
      });
}

int cmd_score(const ScoreFlags& f, bool json, std::ostream& out, std::ostream& err) {
  std::vector<TaggedLine> ref;
  std::vector<TaggedLine> hyp;
  std::vector<ManifestEntry> manifest;
  ScoreOptions opt;
  DetectionReport report;
  return staged(
      err,
      [&] {
        if (f.pool && (f.frame_csv.empty() || f.manifest.empty())) {
          throw Error(ErrorKind::kInvalidArgument, "--pool needs --frame-csv and --manifest");
        }
        if (!f.pool && f.hyp.empty()) {
          throw Error(ErrorKind::kInvalidArgument, "--hyp is required unless --pool is given");
        }
        if (!(f.hop_ms > 0.0)) throw Error(ErrorKind::kInvalidArgument, "--hop-ms must be positive");
        opt.normalization.lowercase = f.lowercase;
        opt.normalization.strip_punctuation = f.strip_punct;
        if (!f.buckets.empty()) opt.bucket_edges = parse_edges(f.buckets);
        if (!f.group_by.empty()) {
          opt.group_by = parse_group_key(f.group_by);
          if (!opt.group_by) {
            throw Error(ErrorKind::kInvalidArgument, "--group-by must be language or generator");
          }
        }
        ref = read_tagged_file(f.ref);
        if (!f.manifest.empty()) manifest = read_manifest(f.manifest);
        if (f.pool) {
          hyp = pooled_hypotheses(manifest, read_frame_csv(f.frame_csv), f.hop_ms / 1000.0);
        } else {
          hyp = read_tagged_file(f.hyp);
        }
        report = score_corpus(ref, hyp, f.manifest.empty() ? nullptr : &manifest, opt);
      },
      [&] {
        if (!f.out.empty()) {
          std::error_code ec;
          fs::create_directories(f.out, ec);
          if (ec) throw Error(ErrorKind::kIo, "cannot create " + f.out + ": " + ec.message());
          const fs::path dir(f.out);
          write_file(dir / "report.txt", report_table(report));
          write_file(dir / "report.csv", report_csv(report));
          write_file(dir / "report.json", report_json(report));
          if (!report.bucket_edges.empty()) write_file(dir / "buckets.csv", buckets_csv(report));
          if (!report.group_key.empty()) write_file(dir / "groups.csv", groups_csv(report));
        }
        out << (json ? report_json(report) : report_table(report));
        for (const std::string& id : report.missing_hyp) {
          err << "warning: no hypothesis for " << id << ", scored as deleted\n";
        }
      });
}

int cmd_copysynth(const CopySynthFlags& f, bool json, std::ostream& out, std::ostream& err) {
  Waveform in;
  WavFormat format = WavFormat::kPcm16;
  Waveform y;
  CopySynthOptions opt;
  return staged(
      err,
      [&] {
        opt = f.synth.options();
        if (f.peak) opt.level = LevelMatch::kPeak;
        opt.stft.validate();
        in = read_wav(f.in, &format);
        y = copy_synth(in, opt);
      },
      [&] {
        write_wav(f.out, y, format);
        const double sc =
            spectral_convergence(magnitude(stft(in, opt.stft)), magnitude(stft(y, opt.stft)));
        if (json) {
          Json j;
          j["samples"] = y.size();
          j["sample_rate"] = y.sample_rate_hz;
          j["spectral_convergence"] = sc;
          out << j.dump() << "\n";
        } else {
          out << "wrote " << f.out << " (" << y.size() << " samples, spectral convergence "
              << sc << ")\n";
        }
      });
}

std::vector<SpliceOp> read_splice_spec(const std::string& path, const Waveform& src) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kFormat, path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("ops") || !j["ops"].is_array()) {
    throw Error(ErrorKind::kFormat, path + ": expected {\"ops\": [...]}");
  }
  const fs::path base = fs::path(path).parent_path();
  std::vector<SpliceOp> ops;
  for (const Json& o : j["ops"]) {
    if (!o.is_object() || !o.contains("start") || !o.contains("end") ||
        !o["start"].is_number() || !o["end"].is_number()) {
      throw Error(ErrorKind::kFormat, path + ": each op needs numeric start and end");
    }
    SpliceOp op;
    op.span.start_s = o["start"].get<double>();
    op.span.end_s = o["end"].get<double>();
    if (o.contains("replacement")) {
      if (!o["replacement"].is_string()) {
        throw Error(ErrorKind::kFormat, path + ": replacement must be a path");
      }
      fs::path rep = o["replacement"].get<std::string>();
      if (rep.is_relative()) rep = base / rep;
      op.replacement = read_wav(rep.string());
    } else {
      const std::size_t b = src.index_at(op.span.start_s);
      const std::size_t e = src.index_at(op.span.end_s);
      if (e > src.size() || b >= e) {
        throw Error(ErrorKind::kSpanOutOfRange, path + ": op outside the source");
      }
      op.replacement.sample_rate_hz = src.sample_rate_hz;
      op.replacement.samples.assign(src.samples.begin() + static_cast<std::ptrdiff_t>(b),
                                    src.samples.begin() + static_cast<std::ptrdiff_t>(e));
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

int cmd_splice(const SpliceFlags& f, bool json, std::ostream& out, std::ostream& err) {
  Waveform src;
  WavFormat format = WavFormat::kPcm16;
  SpliceResult r;
  return staged(
      err,
      [&] {
        if (!(f.fade_ms >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "--fade-ms must be >= 0");
        src = read_wav(f.in, &format);
        const std::vector<SpliceOp> ops = read_splice_spec(f.spec, src);
        SpliceOptions so;
        so.fade_s = f.fade_ms / 1000.0;
        so.keep_length = f.keep_length;
        r = overlap_add_replace(src, ops, so);
      },
      [&] {
        write_wav(f.out, r.wave, format);
        if (json) {
          Json j;
          j["samples"] = r.wave.size();
          j["clipped"] = r.clipped;
          j["ops"] = r.op_ranges.size();
          out << j.dump() << "\n";
        } else {
          out << "wrote " << f.out << " (" << r.wave.size() << " samples, " << r.clipped
              << " clipped)\n";
        }
      });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word-level partial-spoof dataset builder and scorer"};
  app.name("wordspoof");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  BuildFlags bf;
  CLI::App* build = app.add_subcommand("build", "Build a partially spoofed dataset");
  build->add_option("--corpus", bf.corpus, "Corpus JSON Lines file")->required();
  build->add_option("--out", bf.out, "Output directory")->required();
  build->add_option("--seed", bf.seed, "Master seed");
  build->add_option("--generators", bf.generators, "Comma-separated generator ids");
  build->add_option("--fade-ms", bf.fade_ms, "Crossfade length in ms");
  build->add_option("--words-min", bf.words_min, "Fewest words replaced per utterance");
  build->add_option("--words-max", bf.words_max, "Most words replaced per utterance");
  build->add_option("--jobs", bf.jobs, "Worker threads (0 = all cores)");
  build->add_option("--external-dir", bf.external_dir,
                    "Pre-rendered segments: <dir>/<generator>/<utt_id>/<index>.wav");
  bf.synth.add(build, false);
  build->add_flag("--json", json, "Machine-readable output");

  ScoreFlags sf;
  CLI::App* score = app.add_subcommand("score", "Score tagged hypotheses against references");
  score->add_option("--ref", sf.ref, "Reference tagged transcripts (id<TAB>text)")->required();
  score->add_option("--hyp", sf.hyp, "Hypothesis tagged transcripts (id<TAB>text)");
  score->add_option("--manifest", sf.manifest, "Build manifest for durations and groups");
  score->add_option("--buckets", sf.buckets,
                    "Duration bucket edges in seconds, comma-separated, or 'default'");
  score->add_option("--group-by", sf.group_by, "language or generator");
  score->add_flag("--lowercase,!--no-lowercase", sf.lowercase, "Case-fold before alignment");
  score->add_flag("--strip-punct", sf.strip_punct, "Drop punctuation before alignment");
  score->add_flag("--pool", sf.pool, "Derive hypothesis labels from frame scores");
  score->add_option("--frame-csv", sf.frame_csv, "Frame scores: utt_id,frame_index,p_real,p_fake");
  score->add_option("--hop-ms", sf.hop_ms, "Frame hop in ms");
  score->add_option("--out", sf.out, "Directory for report files");
  score->add_flag("--json", json, "Machine-readable output");

  CopySynthFlags cf;
  CLI::App* cs = app.add_subcommand("copysynth", "Griffin-Lim copy-synthesis of a WAV file");
  cs->add_option("input", cf.in, "Input WAV")->required();
  cs->add_option("output", cf.out, "Output WAV")->required();
  cs->add_flag("--peak", cf.peak, "Match the input peak level");
  cf.synth.add(cs, true);
  cs->add_flag("--json", json, "Machine-readable output");

  SpliceFlags pf;
  CLI::App* sp = app.add_subcommand("splice", "Replace spans of a WAV file with crossfades");
  sp->add_option("input", pf.in, "Source WAV")->required();
  sp->add_option("output", pf.out, "Output WAV")->required();
  sp->add_option("--spec", pf.spec,
                 "JSON {\"ops\":[{\"start\":s,\"end\":s,\"replacement\":\"x.wav\"}]}")
      ->required();
  sp->add_option("--fade-ms", pf.fade_ms, "Crossfade length in ms");
  sp->add_flag("--keep-length", pf.keep_length, "Clip or zero-pad replacements to span length");
  sp->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (build->parsed()) return cmd_build(bf, json, out, err);
  if (score->parsed()) return cmd_score(sf, json, out, err);
  if (cs->parsed()) return cmd_copysynth(cf, json, out, err);
  return cmd_splice(pf, json, out, err);
}

}  // namespace wordspoof
