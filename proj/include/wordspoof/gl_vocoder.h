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

// Short-time Fourier analysis/synthesis and Griffin-Lim copy-synthesis.

#ifndef WORDSPOOF_GL_VOCODER_H_
#define WORDSPOOF_GL_VOCODER_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wordspoof/waveform.h"

namespace wordspoof {

// Periodic Hann analysis window of length n_fft.
struct StftConfig {
  std::size_t n_fft = 1024;
  std::size_t hop = 256;

  std::size_t bins() const { return n_fft / 2 + 1; }
  // n_fft must be a power of two >= 16 and hop must divide n_fft with
  // hop <= n_fft / 2. Throws kInvalidArgument.
  void validate() const;
};

struct ComplexSpectrogram {
  StftConfig config;
  std::size_t frames = 0;
  std::size_t signal_length = 0;
  int sample_rate_hz = kDefaultSampleRate;
  std::vector<std::complex<double>> data;  // frame-major, config.bins() per frame

  std::complex<double>& at(std::size_t frame, std::size_t bin) {
    return data[frame * config.bins() + bin];
  }
  const std::complex<double>& at(std::size_t frame, std::size_t bin) const {
    return data[frame * config.bins() + bin];
  }
};

struct Spectrogram {
  StftConfig config;
  std::size_t frames = 0;
  std::size_t signal_length = 0;
  int sample_rate_hz = kDefaultSampleRate;
  std::vector<double> magnitude;  // frame-major, non-negative

  double at(std::size_t frame, std::size_t bin) const {
    return magnitude[frame * config.bins() + bin];
  }
};

// Number of frames for a signal of `length` samples: ceil(length / hop).
std::size_t frame_count(std::size_t length, const StftConfig& cfg);

// Centered analysis: frame t is centered on sample t * hop and the signal is
// reflection-padded at both ends. Throws kTooShort below n_fft samples.
ComplexSpectrogram stft(const Waveform& w, const StftConfig& cfg = {});

// Least-squares inverse of stft(): windowed overlap-add normalized by the
// summed squared window, with padded positions folded back onto the samples
// they mirror. Throws kInconsistentShape.
Waveform istft(const ComplexSpectrogram& spec);

Spectrogram magnitude(const ComplexSpectrogram& spec);

// ||candidate - target||_F / ||target||_F over the two-sided spectrum (bins
// strictly between DC and Nyquist weigh twice). Returns 0 when both are zero
// and infinity when only the target is zero. Throws kInconsistentShape.
double spectral_convergence(const Spectrogram& target, const Spectrogram& candidate);

enum class PhaseInit { kZero, kRandom };

struct GriffinLimOptions {
  std::size_t iters = 60;
  PhaseInit init = PhaseInit::kZero;
  std::uint64_t seed = 0;  // used by PhaseInit::kRandom
};

struct GriffinLimResult {
  Waveform wave;
  // convergence[k] is the spectral convergence after k + 1 iterations.
  std::vector<double> convergence;
};

GriffinLimResult griffin_lim_traced(const Spectrogram& mag,
                                    const GriffinLimOptions& options = {});
Waveform griffin_lim(const Spectrogram& mag, const GriffinLimOptions& options = {});

// Triangular mel filterbank (HTK mel scale, 0 Hz to Nyquist), bands x bins,
// row-major.
std::vector<double> mel_filterbank(std::size_t bands, const StftConfig& cfg,
                                   int sample_rate_hz);

// Compresses the magnitude to `bands` mel bands and maps it back through the
// filterbank pseudo-inverse, clamping negatives to zero.
Spectrogram mel_roundtrip(const Spectrogram& mag, std::size_t bands);

enum class LevelMatch {
  kNone,  // keep the level implied by the target magnitude
  kPeak,  // rescale so the output peak equals the input peak
};

struct CopySynthOptions {
  StftConfig stft;
  GriffinLimOptions gl;
  std::size_t mel_bands = 0;  // 0 keeps the linear magnitude
  LevelMatch level = LevelMatch::kNone;
};

// Griffin-Lim resynthesis of |stft(w)| with the same length as w. Silence
// maps to silence. Deterministic for fixed inputs and options.
Waveform copy_synth(const Waveform& w, const CopySynthOptions& options = {});

}  // namespace wordspoof

#endif  // WORDSPOOF_GL_VOCODER_H_
