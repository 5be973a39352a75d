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

// Replacement of word-aligned waveform segments with overlap-add crossfades.

#ifndef WORDSPOOF_SPLICE_H_
#define WORDSPOOF_SPLICE_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wordspoof/detect_metrics.h"
#include "wordspoof/waveform.h"

namespace wordspoof {

struct Crossfade {
  std::vector<double> fade_out;
  std::vector<double> fade_in;
};

// Complementary linear ramps: fade_in[k] = (k + 1) / (len + 1) and
// fade_out[k] + fade_in[k] == 1 for every k.
Crossfade crossfade_window(std::size_t fade_len);

struct SpliceOp {
  WordSpan span;
  Waveform replacement;
};

struct SpliceOptions {
  double fade_s = 0.010;
  // Clip or zero-pad each replacement at its tail to the span length so the
  // output keeps the source duration. When false, replacements keep their
  // own length and later spans shift accordingly.
  bool keep_length = false;
};

struct SpliceResult {
  Waveform wave;
  std::size_t clipped = 0;  // samples clamped into [-1, 1]
  // Output sample range [first, second) occupied by each op, in input order.
  std::vector<std::pair<std::size_t, std::size_t>> op_ranges;
};

// Replaces each span [start, end) (rounded to samples) with its replacement.
// At a span start the source fades out while the replacement fades in over
// the first fade samples of the span; at the span end the replacement fades
// out into the source's last span samples. The fade shrinks to half of the
// shorter of span and replacement. Samples outside every span are copied
// unchanged.
//
// Throws kOverlappingOps, kSpanOutOfRange, kSampleRateMismatch, and
// kInvalidArgument for an empty replacement or non-finite input.
SpliceResult overlap_add_replace(const Waveform& src, std::span<const SpliceOp> ops,
                                 const SpliceOptions& options = {});

}  // namespace wordspoof

#endif  // WORDSPOOF_SPLICE_H_
