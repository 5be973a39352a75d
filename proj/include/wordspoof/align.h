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

// Word-level minimum edit distance alignment and word error rate.

#ifndef WORDSPOOF_ALIGN_H_
#define WORDSPOOF_ALIGN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wordspoof {

struct NormalizationPolicy {
  bool lowercase = true;
  bool strip_punctuation = false;
  bool collapse_whitespace = true;
};

// Applies the policy word by word and drops words that become empty.
// Lowercasing covers ASCII and Latin-1 letters; punctuation stripping removes
// ASCII punctuation plus common typographic marks. Idempotent.
std::vector<std::string> normalize(std::span<const std::string> words,
                                   const NormalizationPolicy& policy = {});

enum class EditOp { kHit, kSub, kIns, kDel };

const char* edit_op_name(EditOp op);

struct AlignmentStep {
  EditOp op = EditOp::kHit;
  std::optional<std::size_t> ref_index;  // absent for kIns
  std::optional<std::size_t> hyp_index;  // absent for kDel

  friend bool operator==(const AlignmentStep&, const AlignmentStep&) = default;
};

struct EditCounts {
  std::size_t hits = 0;
  std::size_t subs = 0;
  std::size_t ins = 0;
  std::size_t dels = 0;

  std::size_t errors() const { return subs + ins + dels; }
  std::size_t ref_words() const { return hits + subs + dels; }

  EditCounts& operator+=(const EditCounts& o) {
    hits += o.hits;
    subs += o.subs;
    ins += o.ins;
    dels += o.dels;
    return *this;
  }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

struct Alignment {
  std::vector<AlignmentStep> steps;
  EditCounts counts;
};

inline constexpr std::size_t kMaxAlignWords = 10000;

// Unit-cost alignment. Among all minimum-cost alignments the one returned is
// fixed by walking from the start of both sequences and taking, at every
// position, the first optimal move in HIT, SUB, DEL, INS order. Equal inputs
// always align as all HIT. Throws kInputTooLarge above kMaxAlignWords.
Alignment align_words(std::span<const std::string> ref,
                      std::span<const std::string> hyp);

// (subs + ins + dels) / ref_len. Throws kEmptyReference when ref_len is 0.
double wer(const Alignment& a, std::size_t ref_len);

}  // namespace wordspoof

#endif  // WORDSPOOF_ALIGN_H_
