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

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "wordspoof/error.h"

namespace wordspoof {
namespace {

TaggedTranscript words(std::initializer_list<std::pair<const char*, Label>> ws) {
  TaggedTranscript t;
  for (const auto& [text, label] : ws) t.words.push_back({text, label});
  return t;
}

constexpr Label R = Label::kReal;
constexpr Label F = Label::kFake;

// Independent labeling: locate every marker occurrence with find(), pair them
// with a stack, then label each whitespace word by whether its first text
// byte falls inside a matched pair.
std::vector<std::pair<std::string, Label>> brute_force_labels(
    const std::string& s, const std::string& tof, const std::string& eof) {
  std::vector<int> kind(s.size(), 0);  // 1 = tof byte, 2 = eof byte
  std::vector<bool> marker_start(s.size(), false);
  for (std::size_t p = 0; p < s.size();) {
    if (s.compare(p, tof.size(), tof) == 0) {
      for (std::size_t k = 0; k < tof.size(); ++k) kind[p + k] = 1;
      marker_start[p] = true;
      p += tof.size();
    } else if (s.compare(p, eof.size(), eof) == 0) {
      for (std::size_t k = 0; k < eof.size(); ++k) kind[p + k] = 2;
      marker_start[p] = true;
      p += eof.size();
    } else {
      ++p;
    }
  }
  std::vector<bool> inside(s.size(), false);
  std::ptrdiff_t open_at = -1;
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (!marker_start[p]) continue;
    if (kind[p] == 1 && open_at < 0) open_at = static_cast<std::ptrdiff_t>(p);
    if (kind[p] == 2 && open_at >= 0) {
      for (std::size_t q = open_at; q < p; ++q) inside[q] = true;
      open_at = -1;
    }
  }
  std::vector<std::pair<std::string, Label>> out;
  std::string cur;
  Label cur_label = R;
  for (std::size_t p = 0; p <= s.size(); ++p) {
    const bool boundary = p == s.size() || s[p] == ' ' || kind[p] != 0;
    if (boundary) {
      if (!cur.empty()) out.emplace_back(cur, cur_label);
      cur.clear();
      continue;
    }
    if (cur.empty()) cur_label = inside[p] ? F : R;
    cur.push_back(s[p]);
  }
  return out;
}

TEST_CASE("decode transcript with attached markers") {
  const auto t = decode("!!!!!!Now~~~ this !!!!!!isn't~~~ absolutely definitive.");
  CHECK(t == words({{"Now", F}, {"this", R}, {"isn't", F},
                    {"absolutely", R}, {"definitive.", R}}));
}

TEST_CASE("decode empty and whitespace-only input") {
  CHECK(decode("").words.empty());
  CHECK(decode("   \t ").words.empty());
}

TEST_CASE("decode multi-word span") {
  const std::string s = "a !!!!!!b c~~~ d";
  const auto t = decode(s);
  CHECK(t == words({{"a", R}, {"b", F}, {"c", F}, {"d", R}}));
  const auto oracle = brute_force_labels(s, "!!!!!!", "~~~");
  REQUIRE(oracle.size() == t.words.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(oracle[i].first == t.words[i].text);
    CHECK(oracle[i].second == t.words[i].label);
  }
}

TEST_CASE("decode standalone marker tokens") {
  CHECK(decode("x !!!!!! y z ~~~ w") ==
        words({{"x", R}, {"y", F}, {"z", F}, {"w", R}}));
}

TEST_CASE("decode strict mode errors") {
  auto kind_of = [](const char* s) {
    try {
      decode(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  CHECK(kind_of("!!!!!!a !!!!!!b~~~") == ErrorKind::kNestedMarkers);
  CHECK(kind_of("a~~~ b") == ErrorKind::kUnbalancedMarkers);
  CHECK(kind_of("!!!!!!a b") == ErrorKind::kUnbalancedMarkers);
}

TEST_CASE("decode lenient mode recovers") {
  MarkerConfig cfg;
  cfg.lenient = true;
  CHECK(decode("a !!!!!!b c", cfg) == words({{"a", R}, {"b", F}, {"c", F}}));
  CHECK(decode("a~~~ b", cfg) == words({{"a", R}, {"b", R}}));
  CHECK(decode("!!!!!!a !!!!!!b~~~ c", cfg) ==
        words({{"a", F}, {"b", F}, {"c", R}}));
}

TEST_CASE("lenient decode never throws and labels every word") {
  MarkerConfig cfg;
  cfg.lenient = true;
  std::mt19937 rng(7);
  const std::vector<std::string> atoms = {"!!!!!!", "~~~", "a", "bc", " ",
                                          "!", "~", "d.", "  "};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int k = 0; k < n; ++k) {
      s += atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)];
    }
    TaggedTranscript t;
    CHECK_NOTHROW(t = decode(s, cfg));
    // Every non-marker, non-space byte ends up in exactly one word.
    std::size_t text_bytes = 0;
    for (const auto& w : t.words) {
      CHECK(!w.text.empty());
      text_bytes += w.text.size();
    }
    std::string stripped = strip_markers(s, cfg);
    std::size_t expect = 0;
    for (char c : stripped) expect += (c != ' ');
    CHECK(text_bytes == expect);
  }
}

TEST_CASE("decode agrees with brute-force marker matching on balanced text") {
  std::mt19937 rng(11);
  const std::vector<std::string> vocab = {"a", "b", "word", "x.", "it's"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::string s;
    bool open = false;
    const int n = std::uniform_int_distribution<int>(1, 10)(rng);
    for (int k = 0; k < n; ++k) {
      if (k > 0) s += ' ';
      if (!open && rng() % 3 == 0) {
        s += "!!!!!!";
        open = true;
      }
      s += vocab[rng() % vocab.size()];
      if (open && rng() % 2 == 0) {
        s += "~~~";
        open = false;
      }
    }
    if (open) s += "~~~";
    const auto t = decode(s);
    const auto oracle = brute_force_labels(s, "!!!!!!", "~~~");
    REQUIRE(oracle.size() == t.words.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(oracle[i].first == t.words[i].text);
      CHECK(oracle[i].second == t.words[i].label);
    }
  }
}

TEST_CASE("encode canonical form") {
  CHECK(encode(words({{"wearing", F}, {"boots.", R}})) == "!!!!!!wearing~~~ boots.");
  CHECK(encode(words({{"to", R}, {"you", R}})) == "to you");
  CHECK(encode(words({{"fitting", F}, {"destruction.", F}})) ==
        "!!!!!!fitting~~~ !!!!!!destruction.~~~");
  CHECK(encode(TaggedTranscript{}) == "");
}

TEST_CASE("encode rejects words that cannot round-trip") {
  CHECK_THROWS_AS(encode(words({{"a~~~b", R}})), Error);
  CHECK_THROWS_AS(encode(words({{"two words", R}})), Error);
  CHECK_THROWS_AS(encode(words({{"", F}})), Error);
  // "~" next to the end marker would be read as part of it.
  CHECK(!is_valid_word("~"));
  CHECK(is_valid_word("!"));
  CHECK(is_valid_word("Baume,"));
  try {
    encode(words({{"!!!!!!", R}}));
    FAIL("expected InvalidWord");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidWord);
  }
}

TEST_CASE("strip_markers") {
  CHECK(strip_markers("!!!!!!Now~~~ this") == "Now this");
  CHECK(strip_markers("plain text, unchanged.") == "plain text, unchanged.");
  CHECK(strip_markers("!!!!!!a~~~ !!!!!!b~~~") == "a b");
}

TEST_CASE("custom markers") {
  MarkerConfig cfg;
  cfg.tof_marker = "<TOF>";
  cfg.eof_marker = "<EOF>";
  const auto t = words({{"I", F}, {"present", F}, {"to", R}});
  const std::string s = encode(t, cfg);
  CHECK(s == "<TOF>I<EOF> <TOF>present<EOF> to");
  CHECK(decode(s, cfg) == t);
}

TEST_CASE("marker config validation") {
  MarkerConfig same;
  same.eof_marker = same.tof_marker;
  CHECK_THROWS_AS(same.validate(), Error);
  MarkerConfig spaced;
  spaced.tof_marker = "<< ";
  CHECK_THROWS_AS(spaced.validate(), Error);
  MarkerConfig empty;
  empty.eof_marker = "";
  CHECK_THROWS_AS(empty.validate(), Error);
}

TEST_CASE("round trip and label-free equivalence on random transcripts") {
  std::mt19937 rng(3);
  const std::string alphabet = "abZ.,'!~-";
  MarkerConfig cfg;
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    TaggedTranscript t;
    const int n = std::uniform_int_distribution<int>(0, 8)(rng);
    while (static_cast<int>(t.words.size()) < n) {
      std::string w;
      const int len = std::uniform_int_distribution<int>(1, 5)(rng);
      for (int k = 0; k < len; ++k) w += alphabet[rng() % alphabet.size()];
      if (!is_valid_word(w, cfg)) continue;
      t.words.push_back({w, rng() % 2 ? F : R});
    }
    const std::string s = encode(t, cfg);
    CHECK(decode(s, cfg) == t);
    std::string joined;
    for (std::size_t i = 0; i < t.words.size(); ++i) {
      if (i) joined += ' ';
      joined += t.words[i].text;
    }
    CHECK(strip_markers(s, cfg) == joined);
    ++checked;
  }
  CHECK(checked == 3000);
}

TEST_CASE("tagged file io") {
  const auto path =
      (std::filesystem::temp_directory_path() / "wordspoof_tagged_test.txt").string();
  write_tagged_file(path, {{"u1", "!!!!!!a~~~ b"}, {"u2", ""}, {"u3", "c"}});
  const auto lines = read_tagged_file(path);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == TaggedLine{"u1", "!!!!!!a~~~ b"});
  CHECK(lines[1] == TaggedLine{"u2", ""});
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_tagged_file(path), Error);
}

}  // namespace
}  // namespace wordspoof
