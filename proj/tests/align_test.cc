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

#include "wordspoof/align.h"

#include <functional>
#include <random>

#include "doctest.h"
#include "wordspoof/error.h"

namespace wordspoof {
namespace {

using Words = std::vector<std::string>;

// Plain recursion over prefixes; exponential but fine for length <= 6.
int brute_force_distance(const Words& a, std::size_t i, const Words& b,
                         std::size_t j) {
  if (i == a.size()) return static_cast<int>(b.size() - j);
  if (j == b.size()) return static_cast<int>(a.size() - i);
  const int sub = brute_force_distance(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  const int del = brute_force_distance(a, i + 1, b, j) + 1;
  const int ins = brute_force_distance(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

// Enumerates every alignment path and returns those of minimum cost.
std::vector<std::vector<EditOp>> all_optimal_paths(const Words& a, const Words& b) {
  std::vector<std::vector<EditOp>> best;
  int best_cost = 1 << 30;
  std::vector<EditOp> path;
  std::function<void(std::size_t, std::size_t, int)> rec =
      [&](std::size_t i, std::size_t j, int c) {
        if (i == a.size() && j == b.size()) {
          if (c < best_cost) {
            best_cost = c;
            best.clear();
          }
          if (c == best_cost) best.push_back(path);
          return;
        }
        if (i < a.size() && j < b.size()) {
          const bool eq = a[i] == b[j];
          path.push_back(eq ? EditOp::kHit : EditOp::kSub);
          rec(i + 1, j + 1, c + (eq ? 0 : 1));
          path.pop_back();
        }
        if (i < a.size()) {
          path.push_back(EditOp::kDel);
          rec(i + 1, j, c + 1);
          path.pop_back();
        }
        if (j < b.size()) {
          path.push_back(EditOp::kIns);
          rec(i, j + 1, c + 1);
          path.pop_back();
        }
      };
  rec(0, 0, 0);
  return best;
}

void check_well_formed(const Alignment& al, const Words& ref, const Words& hyp) {
  std::size_t next_ref = 0;
  std::size_t next_hyp = 0;
  EditCounts counts;
  for (const auto& s : al.steps) {
    switch (s.op) {
      case EditOp::kHit:
      case EditOp::kSub:
        REQUIRE(s.ref_index.has_value());
        REQUIRE(s.hyp_index.has_value());
        CHECK(*s.ref_index == next_ref++);
        CHECK(*s.hyp_index == next_hyp++);
        CHECK((ref[*s.ref_index] == hyp[*s.hyp_index]) == (s.op == EditOp::kHit));
        (s.op == EditOp::kHit ? counts.hits : counts.subs)++;
        break;
      case EditOp::kDel:
        REQUIRE(s.ref_index.has_value());
        CHECK(!s.hyp_index.has_value());
        CHECK(*s.ref_index == next_ref++);
        counts.dels++;
        break;
      case EditOp::kIns:
        REQUIRE(s.hyp_index.has_value());
        CHECK(!s.ref_index.has_value());
        CHECK(*s.hyp_index == next_hyp++);
        counts.ins++;
        break;
    }
  }
  CHECK(next_ref == ref.size());
  CHECK(next_hyp == hyp.size());
  CHECK(counts == al.counts);
}

std::vector<EditOp> ops_of(const Alignment& a) {
  std::vector<EditOp> ops;
  for (const auto& s : a.steps) ops.push_back(s.op);
  return ops;
}

TEST_CASE("normalize") {
  const Words in = {"Now", "THIS"};
  CHECK(normalize(in) == Words{"now", "this"});

  NormalizationPolicy strip;
  strip.strip_punctuation = true;
  CHECK(normalize(Words{"boots."}, strip) == Words{"boots"});
  CHECK(normalize(Words{"«Sachen»", "...", "isn't"}, strip) ==
        Words{"sachen", "isnt"});

  NormalizationPolicy identity{false, false, false};
  const Words mixed = {"Baume,", "DIE", "x"};
  CHECK(normalize(mixed, identity) == mixed);

  CHECK(normalize(Words{"ÜBER", "Ça", "×"}) == Words{"über", "ça", "×"});
  CHECK(normalize(Words{"  a \t b ", "   "}) == Words{"a b"});
}

TEST_CASE("normalize is idempotent") {
  std::mt19937 rng(5);
  const std::vector<std::string> atoms = {"A", "b", ".", " ", "É", "«", "'", "z", "\t"};
  for (int trial = 0; trial < 500; ++trial) {
    Words ws(std::uniform_int_distribution<int>(0, 5)(rng));
    for (auto& w : ws) {
      const int len = std::uniform_int_distribution<int>(0, 6)(rng);
      for (int k = 0; k < len; ++k) w += atoms[rng() % atoms.size()];
    }
    for (int mask = 0; mask < 8; ++mask) {
      NormalizationPolicy p{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
      const Words once = normalize(ws, p);
      CHECK(normalize(once, p) == once);
    }
  }
}

TEST_CASE("align identical sequences") {
  const Words w = {"a", "b", "c"};
  const Alignment a = align_words(w, w);
  CHECK(a.counts == EditCounts{3, 0, 0, 0});
  CHECK(wer(a, w.size()) == 0.0);
}

TEST_CASE("align substitution") {
  const Words ref = {"I", "could"};
  const Words hyp = {"it", "could"};
  const Alignment a = align_words(ref, hyp);
  REQUIRE(a.steps.size() == 2);
  CHECK(a.steps[0] == AlignmentStep{EditOp::kSub, 0, 0});
  CHECK(a.steps[1] == AlignmentStep{EditOp::kHit, 1, 1});
}

TEST_CASE("align insertion matches exhaustive oracle") {
  const Words ref = {"a", "b"};
  const Words hyp = {"a", "x", "b"};
  const auto optimal = all_optimal_paths(ref, hyp);
  REQUIRE(optimal.size() == 1);
  const Alignment a = align_words(ref, hyp);
  CHECK(ops_of(a) == optimal[0]);
  CHECK(ops_of(a) == std::vector<EditOp>{EditOp::kHit, EditOp::kIns, EditOp::kHit});
  CHECK(a.counts.errors() == 1);
}

TEST_CASE("tie-break takes the first optimal move from the start") {
  // "enjoy" vs "kind of": SUB then INS, not INS then SUB.
  const Words ref = {"really", "enjoy", "putting"};
  const Words hyp = {"really", "kind", "of", "putting"};
  const Alignment a = align_words(ref, hyp);
  CHECK(ops_of(a) == std::vector<EditOp>{EditOp::kHit, EditOp::kSub,
                                         EditOp::kIns, EditOp::kHit});
  CHECK(a.steps[1].hyp_index == 1u);

  // SUB is preferred over a DEL+INS pair and DEL over INS on equal cost.
  const Alignment b = align_words(Words{"x", "y"}, Words{"z"});
  CHECK(ops_of(b) == std::vector<EditOp>{EditOp::kSub, EditOp::kDel});
  const Alignment c = align_words(Words{"x"}, Words{"y", "z"});
  CHECK(ops_of(c) == std::vector<EditOp>{EditOp::kSub, EditOp::kIns});

  // The chosen path is always one of the exhaustive optima.
  const auto optimal = all_optimal_paths(ref, hyp);
  CHECK(std::find(optimal.begin(), optimal.end(), ops_of(a)) != optimal.end());
}

TEST_CASE("align empty sides") {
  const Words some = {"a", "b"};
  const Alignment dels = align_words(some, Words{});
  CHECK(dels.counts == EditCounts{0, 0, 0, 2});
  const Alignment ins = align_words(Words{}, some);
  CHECK(ins.counts == EditCounts{0, 0, 2, 0});
  CHECK(align_words(Words{}, Words{}).steps.empty());
}

TEST_CASE("wer formula") {
  CHECK(wer(align_words(Words{"a", "b", "c", "d", "e"},
                        Words{"a", "b", "x", "d", "e"}), 5) == doctest::Approx(0.2));
  CHECK(wer(align_words(Words{"a", "b"}, Words{"a", "c", "b"}), 2) ==
        doctest::Approx(0.5));
  try {
    wer(Alignment{}, 0);
    FAIL("expected EmptyReference");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyReference);
  }
}

TEST_CASE("input size limit") {
  const Words big(kMaxAlignWords + 1, "w");
  try {
    align_words(big, Words{"w"});
    FAIL("expected InputTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInputTooLarge);
  }
}

TEST_CASE("random pairs agree with brute-force distance and are well formed") {
  std::mt19937 rng(17);
  const Words alphabet = {"p", "q", "r", "s"};
  for (int trial = 0; trial < 3000; ++trial) {
    Words ref(std::uniform_int_distribution<int>(0, 6)(rng));
    Words hyp(std::uniform_int_distribution<int>(0, 6)(rng));
    for (auto& w : ref) w = alphabet[rng() % 4];
    for (auto& w : hyp) w = alphabet[rng() % 4];
    const Alignment a = align_words(ref, hyp);
    CHECK(static_cast<int>(a.counts.errors()) ==
          brute_force_distance(ref, 0, hyp, 0));
    check_well_formed(a, ref, hyp);
    if (!ref.empty()) CHECK((wer(a, ref.size()) == 0.0) == (ref == hyp));
  }
}

}  // namespace
}  // namespace wordspoof
