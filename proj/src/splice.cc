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

#include "wordspoof/splice.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wordspoof/error.h"

namespace wordspoof {

Crossfade crossfade_window(std::size_t fade_len) {
  Crossfade c;
  c.fade_in.resize(fade_len);
  c.fade_out.resize(fade_len);
  for (std::size_t k = 0; k < fade_len; ++k) {
    c.fade_in[k] = static_cast<double>(k + 1) / static_cast<double>(fade_len + 1);
    c.fade_out[k] = 1.0 - c.fade_in[k];
  }
  return c;
}

SpliceResult overlap_add_replace(const Waveform& src, std::span<const SpliceOp> ops,
                                 const SpliceOptions& options) {
  if (!(options.fade_s >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "fade must be non-negative");
  }
  if (!src.all_finite()) {
    throw Error(ErrorKind::kInvalidArgument, "source has non-finite samples");
  }
  const std::size_t n = src.size();

  struct Placed {
    std::size_t op;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Placed> placed;
  placed.reserve(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const SpliceOp& op = ops[i];
    if (op.replacement.sample_rate_hz != src.sample_rate_hz) {
      throw Error(ErrorKind::kSampleRateMismatch,
                  "replacement " + std::to_string(i) + " is at " +
                      std::to_string(op.replacement.sample_rate_hz) + " Hz, source at " +
                      std::to_string(src.sample_rate_hz) + " Hz");
    }
    if (op.replacement.samples.empty() || !op.replacement.all_finite()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "replacement " + std::to_string(i) + " is empty or non-finite");
    }
    if (op.span.start_s < 0.0 || !(op.span.end_s > op.span.start_s)) {
      throw Error(ErrorKind::kSpanOutOfRange, "op " + std::to_string(i) + " has an invalid span");
    }
    const std::size_t begin = src.index_at(op.span.start_s);
    const std::size_t end = src.index_at(op.span.end_s);
    if (end > n || begin >= end) {
      throw Error(ErrorKind::kSpanOutOfRange,
                  "op " + std::to_string(i) + " covers samples [" + std::to_string(begin) +
                      ", " + std::to_string(end) + ") of " + std::to_string(n));
    }
    placed.push_back({i, begin, end});
  }
  std::sort(placed.begin(), placed.end(),
            [](const Placed& a, const Placed& b) { return a.begin < b.begin; });
  for (std::size_t k = 1; k < placed.size(); ++k) {
    if (placed[k].begin < placed[k - 1].end) {
      throw Error(ErrorKind::kOverlappingOps,
                  "ops " + std::to_string(placed[k - 1].op) + " and " +
                      std::to_string(placed[k].op) + " overlap");
    }
  }

  const auto fade_target =
      static_cast<std::size_t>(std::llround(options.fade_s * src.sample_rate_hz));
  SpliceResult result;
  result.wave.sample_rate_hz = src.sample_rate_hz;
  result.op_ranges.resize(ops.size());
  std::vector<float>& out = result.wave.samples;
  out.reserve(n);

  auto emit = [&](double v) {
    if (v > 1.0 || v < -1.0) {
      ++result.clipped;
      v = std::clamp(v, -1.0, 1.0);
    }
    out.push_back(static_cast<float>(v));
  };

  auto copy_src = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      const float v = src.samples[k];
      if (v > 1.0f || v < -1.0f) {
        emit(v);
      } else {
        out.push_back(v);
      }
    }
  };

  std::size_t cursor = 0;
  for (const Placed& p : placed) {
    copy_src(cursor, p.begin);
    const std::size_t span_len = p.end - p.begin;
    std::vector<float> rep = ops[p.op].replacement.samples;
    if (options.keep_length) rep.resize(span_len, 0.0f);
    const std::size_t len = rep.size();
    const std::size_t fade = std::min({fade_target, span_len / 2, len / 2});
    const Crossfade xf = crossfade_window(fade);

    const std::size_t out_begin = out.size();
    for (std::size_t k = 0; k < len; ++k) {
      if (k < fade) {
        emit(xf.fade_out[k] * src.samples[p.begin + k] + xf.fade_in[k] * rep[k]);
      } else if (k >= len - fade) {
        const std::size_t j = k - (len - fade);
        emit(xf.fade_out[j] * rep[k] + xf.fade_in[j] * src.samples[p.end - fade + j]);
      } else {
        emit(rep[k]);
      }
    }
    result.op_ranges[p.op] = {out_begin, out.size()};
    cursor = p.end;
  }
  copy_src(cursor, n);
  return result;
}

}  // namespace wordspoof
