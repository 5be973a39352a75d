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

#ifndef WORDSPOOF_TESTS_FIXTURES_H_
#define WORDSPOOF_TESTS_FIXTURES_H_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "wordspoof/waveform.h"

namespace wordspoof::testing {

namespace fs = std::filesystem;

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("wordspoof_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string str(const std::string& child = "") const {
    return child.empty() ? path_.string() : (path_ / child).string();
  }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Synthetic corpus of tone "words" with fabricated spans. Each word is a
// short harmonic burst with its own pitch; gaps hold faint noise.
// Writes <dir>/audio/<id>.wav and <dir>/corpus.jsonl, returns the corpus path.
inline std::string make_corpus(const fs::path& dir, int utterances, unsigned seed) {
  static const char* kVocab[] = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot",
                                 "golf",  "hotel", "india",   "juliet", "kilo", "lima"};
  static const char* kLangs[] = {"en", "de", "fr"};
  std::mt19937 rng(seed);
  auto uni = [&rng](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  fs::create_directories(dir / "audio");
  std::ofstream corpus(dir / "corpus.jsonl");
  for (int u = 0; u < utterances; ++u) {
    char id[32];
    std::snprintf(id, sizeof id, "utt%03d", u);
    const int sr = 16000;
    nlohmann::ordered_json words = nlohmann::ordered_json::array();
    std::vector<float> samples;
    double t = uni(0.05, 0.15);
    const int n_words = 2 + static_cast<int>(rng() % 7);
    auto pad_to = [&](double until) {
      while (samples.size() < static_cast<std::size_t>(std::llround(until * sr))) {
        samples.push_back(static_cast<float>(uni(-0.003, 0.003)));
      }
    };
    for (int w = 0; w < n_words; ++w) {
      const double dur = uni(0.12, 0.40);
      pad_to(t);
      const double f0 = uni(110.0, 260.0);
      const std::size_t begin = static_cast<std::size_t>(std::llround(t * sr));
      const std::size_t end = static_cast<std::size_t>(std::llround((t + dur) * sr));
      for (std::size_t i = begin; i < end; ++i) {
        const double x = static_cast<double>(i - begin) / sr;
        const double env = std::sin(std::numbers::pi * x / dur);
        double v = 0.0;
        for (int k = 1; k <= 6; ++k) v += std::sin(2 * std::numbers::pi * f0 * k * x) / k;
        samples.push_back(static_cast<float>(0.25 * env * v));
      }
      words.push_back({{"text", kVocab[rng() % 12]},
                       {"start", static_cast<double>(begin) / sr},
                       {"end", static_cast<double>(end) / sr}});
      t = static_cast<double>(end) / sr + uni(0.02, 0.12);
    }
    pad_to(t + 0.1);
    Waveform w;
    w.samples = std::move(samples);
    w.sample_rate_hz = sr;
    write_wav((dir / "audio" / (std::string(id) + ".wav")).string(), w);
    nlohmann::ordered_json rec;
    rec["utt_id"] = id;
    rec["audio"] = "audio/" + std::string(id) + ".wav";
    rec["language"] = kLangs[u % 3];
    rec["words"] = std::move(words);
    corpus << rec.dump() << "\n";
  }
  return (dir / "corpus.jsonl").string();
}

}  // namespace wordspoof::testing

#endif  // WORDSPOOF_TESTS_FIXTURES_H_
