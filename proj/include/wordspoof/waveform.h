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

// Mono audio buffers and RIFF/WAVE input/output.

#ifndef WORDSPOOF_WAVEFORM_H_
#define WORDSPOOF_WAVEFORM_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wordspoof {

inline constexpr int kDefaultSampleRate = 16000;

struct Waveform {
  std::vector<float> samples;
  int sample_rate_hz = kDefaultSampleRate;

  std::size_t size() const { return samples.size(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
  // Sample index of time `t` seconds, rounded to nearest.
  std::size_t index_at(double t) const;
  float peak() const;
  bool all_finite() const;
};

enum class WavFormat { kPcm16, kFloat32 };

// Accepts mono 16-bit PCM and 32-bit IEEE float, including the
// WAVE_FORMAT_EXTENSIBLE wrapper. Throws kFormat for anything else.
Waveform decode_wav(std::string_view bytes, WavFormat* format = nullptr);
std::string encode_wav(const Waveform& w, WavFormat format);

Waveform read_wav(const std::string& path, WavFormat* format = nullptr);
void write_wav(const std::string& path, const Waveform& w,
               WavFormat format = WavFormat::kPcm16);

}  // namespace wordspoof

#endif  // WORDSPOOF_WAVEFORM_H_
