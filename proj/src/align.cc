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

#include <algorithm>
#include <array>
#include <cstdint>
#include <string_view>

#include "wordspoof/error.h"

namespace wordspoof {
namespace {

constexpr std::array<std::string_view, 11> kUnicodePunct = {
    "\u00ab", "\u00bb", "\u00a1", "\u00bf", "\u2013", "\u2014",
    "\u2018", "\u2019", "\u201c", "\u201d", "\u2026"};  // « » ¡ ¿ en/em dash, quotes, ellipsis

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) ||
         (c >= 0x5b && c <= 0x60) || (c >= 0x7b && c <= 0x7e);
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      // U+00C0..U+00DE except U+00D7 (multiplication sign).
      const auto d = static_cast<unsigned char>(out[i + 1]);
      if (d >= 0x80 && d <= 0x9E && d != 0x97) {
        out[i + 1] = static_cast<char>(d + 0x20);
      }
      ++i;
    }
  }
  return out;
}

std::string remove_punct(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (is_ascii_punct(c)) {
      ++i;
      continue;
    }
    bool matched = false;
    if (c >= 0x80) {
      for (std::string_view p : kUnicodePunct) {
        if (s.substr(i).starts_with(p)) {
          i += p.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_ascii_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<std::string> normalize(std::span<const std::string> words,
                                   const NormalizationPolicy& policy) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    std::string cur = w;
    if (policy.lowercase) cur = to_lower(cur);
    if (policy.strip_punctuation) cur = remove_punct(cur);
    if (policy.collapse_whitespace) cur = collapse_ws(cur);
    if (!cur.empty()) out.push_back(std::move(cur));
  }
  return out;
}

const char* edit_op_name(EditOp op) {
  switch (op) {
    case EditOp::kHit: return "HIT";
    case EditOp::kSub: return "SUB";
    case EditOp::kIns: return "INS";
    case EditOp::kDel: return "DEL";
  }
  return "?";
}

Alignment align_words(std::span<const std::string> ref,
                      std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  if (n > kMaxAlignWords || m > kMaxAlignWords) {
    throw Error(ErrorKind::kInputTooLarge,
                "alignment limited to " + std::to_string(kMaxAlignWords) +
                    " words per side (got " + std::to_string(n) + " and " +
                    std::to_string(m) + ")");
  }

  // cost[i][j]: edit distance between ref[i:] and hyp[j:]. Costs never
  // exceed max(n, m) <= kMaxAlignWords, so 16 bits suffice.
  const std::size_t stride = m + 1;
  std::vector<std::uint16_t> cost((n + 1) * stride);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint16_t& {
    return cost[i * stride + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, m) = static_cast<std::uint16_t>(n - i);
  for (std::size_t j = 0; j <= m; ++j) at(n, j) = static_cast<std::uint16_t>(m - j);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      const int diag = at(i + 1, j + 1) + (ref[i] == hyp[j] ? 0 : 1);
      const int del = at(i + 1, j) + 1;
      const int ins = at(i, j + 1) + 1;
      at(i, j) = static_cast<std::uint16_t>(std::min({diag, del, ins}));
    }
  }

  Alignment a;
  a.steps.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    const int here = at(i, j);
    if (i < n && j < m && ref[i] == hyp[j] && here == at(i + 1, j + 1)) {
      a.steps.push_back({EditOp::kHit, i, j});
      ++a.counts.hits;
      ++i;
      ++j;
    } else if (i < n && j < m && ref[i] != hyp[j] &&
               here == at(i + 1, j + 1) + 1) {
      a.steps.push_back({EditOp::kSub, i, j});
      ++a.counts.subs;
      ++i;
      ++j;
    } else if (i < n && here == at(i + 1, j) + 1) {
      a.steps.push_back({EditOp::kDel, i, std::nullopt});
      ++a.counts.dels;
      ++i;
    } else {
      a.steps.push_back({EditOp::kIns, std::nullopt, j});
      ++a.counts.ins;
      ++j;
    }
  }
  return a;
}

double wer(const Alignment& a, std::size_t ref_len) {
  if (ref_len == 0) {
    throw Error(ErrorKind::kEmptyReference, "WER undefined for empty reference");
  }
  return static_cast<double>(a.counts.errors()) / static_cast<double>(ref_len);
}

}  // namespace wordspoof
