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

#include "wordspoof/gl_vocoder.h"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include "wordspoof/error.h"

namespace wordspoof {
namespace {

// FFTW planning is not thread-safe; executing a plan on fresh arrays is.
// Plans are created once per size and live for the whole process.
class RealFft {
 public:
  static const RealFft& get(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<RealFft>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot.reset(new RealFft(n));
    return *slot;
  }

  // The buffers must come from fftw_alloc_* so that alignment matches the
  // planning arrays.
  void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(r2c_, in, out); }
  void inverse(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(c2r_, in, out); }

 private:
  explicit RealFft(std::size_t n) {
    double* re = fftw_alloc_real(n);
    fftw_complex* cx = fftw_alloc_complex(n / 2 + 1);
    const int size = static_cast<int>(n);
    r2c_ = fftw_plan_dft_r2c_1d(size, re, cx, FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_1d(size, cx, re, FFTW_ESTIMATE);
    fftw_free(re);
    fftw_free(cx);
  }

  fftw_plan r2c_;
  fftw_plan c2r_;
};

struct FftBuffers {
  explicit FftBuffers(std::size_t n)
      : real(fftw_alloc_real(n)), cplx(fftw_alloc_complex(n / 2 + 1)) {}
  ~FftBuffers() {
    fftw_free(real);
    fftw_free(cplx);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;

  double* real;
  fftw_complex* cplx;
};

std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return w;
}

// Mirror index without repeating the edge sample, for any integer position.
std::size_t reflect(std::ptrdiff_t q, std::size_t len) {
  const auto period = static_cast<std::ptrdiff_t>(2 * (len - 1));
  std::ptrdiff_t m = q % period;
  if (m < 0) m += period;
  if (m >= static_cast<std::ptrdiff_t>(len)) m = period - m;
  return static_cast<std::size_t>(m);
}

double bin_weight(std::size_t bin, std::size_t bins) {
  return (bin == 0 || bin + 1 == bins) ? 1.0 : 2.0;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

void StftConfig::validate() const {
  if (n_fft < 16 || !std::has_single_bit(n_fft)) {
    throw Error(ErrorKind::kInvalidArgument,
                "n_fft must be a power of two >= 16 (got " + std::to_string(n_fft) + ")");
  }
  if (hop == 0 || hop > n_fft / 2 || n_fft % hop != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "hop must divide n_fft and be at most n_fft / 2 (got " +
                    std::to_string(hop) + ")");
  }
}

std::size_t frame_count(std::size_t length, const StftConfig& cfg) {
  return (length + cfg.hop - 1) / cfg.hop;
}

namespace {

ComplexSpectrogram analyze(const std::vector<double>& x, int sample_rate_hz,
                           const StftConfig& cfg) {
  cfg.validate();
  const std::size_t len = x.size();
  if (len < cfg.n_fft) {
    throw Error(ErrorKind::kTooShort, "signal has " + std::to_string(len) +
                                          " samples, need at least " +
                                          std::to_string(cfg.n_fft));
  }
  ComplexSpectrogram spec;
  spec.config = cfg;
  spec.frames = frame_count(len, cfg);
  spec.signal_length = len;
  spec.sample_rate_hz = sample_rate_hz;
  const std::size_t bins = cfg.bins();
  spec.data.resize(spec.frames * bins);

  const RealFft& fft = RealFft::get(cfg.n_fft);
  FftBuffers buf(cfg.n_fft);
  const std::vector<double> window = hann(cfg.n_fft);
  const auto half = static_cast<std::ptrdiff_t>(cfg.n_fft / 2);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const auto origin = static_cast<std::ptrdiff_t>(t * cfg.hop) - half;
    for (std::size_t i = 0; i < cfg.n_fft; ++i) {
      buf.real[i] = window[i] * x[reflect(origin + static_cast<std::ptrdiff_t>(i), len)];
    }
    fft.forward(buf.real, buf.cplx);
    for (std::size_t k = 0; k < bins; ++k) {
      spec.at(t, k) = {buf.cplx[k][0], buf.cplx[k][1]};
    }
  }
  return spec;
}

std::vector<double> synthesize(const ComplexSpectrogram& spec) {
  const StftConfig& cfg = spec.config;
  cfg.validate();
  const std::size_t bins = cfg.bins();
  const std::size_t len = spec.signal_length;
  if (len < 2 || spec.frames != frame_count(len, cfg) ||
      spec.data.size() != spec.frames * bins) {
    throw Error(ErrorKind::kInconsistentShape,
                "spectrogram of " + std::to_string(spec.frames) + " frames x " +
                    std::to_string(spec.data.size()) + " values does not describe " +
                    std::to_string(len) + " samples");
  }
  const RealFft& fft = RealFft::get(cfg.n_fft);
  FftBuffers buf(cfg.n_fft);
  const std::vector<double> window = hann(cfg.n_fft);
  const auto half = static_cast<std::ptrdiff_t>(cfg.n_fft / 2);
  const double scale = 1.0 / static_cast<double>(cfg.n_fft);

  std::vector<double> num(len, 0.0);
  std::vector<double> den(len, 0.0);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k) {
      buf.cplx[k][0] = spec.at(t, k).real();
      buf.cplx[k][1] = spec.at(t, k).imag();
    }
    fft.inverse(buf.cplx, buf.real);
    const auto origin = static_cast<std::ptrdiff_t>(t * cfg.hop) - half;
    for (std::size_t i = 0; i < cfg.n_fft; ++i) {
      const std::size_t idx = reflect(origin + static_cast<std::ptrdiff_t>(i), len);
      num[idx] += window[i] * buf.real[i] * scale;
      den[idx] += window[i] * window[i];
    }
  }
  for (std::size_t i = 0; i < len; ++i) num[i] = den[i] > 1e-12 ? num[i] / den[i] : 0.0;
  return num;
}

Waveform to_waveform(const std::vector<double>& x, int sample_rate_hz) {
  Waveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.samples.assign(x.begin(), x.end());
  return w;
}

}  // namespace

ComplexSpectrogram stft(const Waveform& w, const StftConfig& cfg) {
  const std::vector<double> x(w.samples.begin(), w.samples.end());
  return analyze(x, w.sample_rate_hz, cfg);
}

Waveform istft(const ComplexSpectrogram& spec) {
  return to_waveform(synthesize(spec), spec.sample_rate_hz);
}

Spectrogram magnitude(const ComplexSpectrogram& spec) {
  Spectrogram m;
  m.config = spec.config;
  m.frames = spec.frames;
  m.signal_length = spec.signal_length;
  m.sample_rate_hz = spec.sample_rate_hz;
  m.magnitude.resize(spec.data.size());
  for (std::size_t i = 0; i < spec.data.size(); ++i) m.magnitude[i] = std::abs(spec.data[i]);
  return m;
}

double spectral_convergence(const Spectrogram& target, const Spectrogram& candidate) {
  const std::size_t bins = target.config.bins();
  if (target.frames != candidate.frames || target.config.n_fft != candidate.config.n_fft ||
      target.magnitude.size() != candidate.magnitude.size() ||
      target.magnitude.size() != target.frames * bins) {
    throw Error(ErrorKind::kInconsistentShape, "spectrogram shapes differ");
  }
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t t = 0; t < target.frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k) {
      const double wgt = bin_weight(k, bins);
      const double d = candidate.at(t, k) - target.at(t, k);
      diff += wgt * d * d;
      norm += wgt * target.at(t, k) * target.at(t, k);
    }
  }
  if (norm == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(diff / norm);
}

GriffinLimResult griffin_lim_traced(const Spectrogram& mag, const GriffinLimOptions& options) {
  const std::size_t bins = mag.config.bins();
  if (mag.magnitude.size() != mag.frames * bins) {
    throw Error(ErrorKind::kInconsistentShape, "magnitude spectrogram has the wrong size");
  }
  if (options.iters == 0) {
    throw Error(ErrorKind::kInvalidArgument, "Griffin-Lim needs at least one iteration");
  }

  ComplexSpectrogram target;
  target.config = mag.config;
  target.frames = mag.frames;
  target.signal_length = mag.signal_length;
  target.sample_rate_hz = mag.sample_rate_hz;
  target.data.resize(mag.magnitude.size());
  if (options.init == PhaseInit::kRandom) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = 0; i < target.data.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      target.data[i] = std::polar(mag.magnitude[i], 2.0 * std::numbers::pi * u);
    }
  } else {
    for (std::size_t i = 0; i < target.data.size(); ++i) target.data[i] = mag.magnitude[i];
  }

  // Signals stay in double precision between projections so that every
  // synthesis step is the exact least-squares inverse.
  GriffinLimResult result;
  result.convergence.reserve(options.iters);
  std::vector<double> x = synthesize(target);
  ComplexSpectrogram est = analyze(x, mag.sample_rate_hz, mag.config);
  for (std::size_t it = 0; it < options.iters; ++it) {
    for (std::size_t i = 0; i < target.data.size(); ++i) {
      const double a = std::abs(est.data[i]);
      target.data[i] = a > 0.0 ? est.data[i] * (mag.magnitude[i] / a)
                               : std::complex<double>(mag.magnitude[i], 0.0);
    }
    x = synthesize(target);
    est = analyze(x, mag.sample_rate_hz, mag.config);
    result.convergence.push_back(spectral_convergence(mag, magnitude(est)));
  }
  result.wave = to_waveform(x, mag.sample_rate_hz);
  return result;
}

Waveform griffin_lim(const Spectrogram& mag, const GriffinLimOptions& options) {
  return griffin_lim_traced(mag, options).wave;
}

std::vector<double> mel_filterbank(std::size_t bands, const StftConfig& cfg,
                                   int sample_rate_hz) {
  if (bands == 0) throw Error(ErrorKind::kInvalidArgument, "mel filterbank needs bands");
  const std::size_t bins = cfg.bins();
  const double top = hz_to_mel(sample_rate_hz / 2.0);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(top * static_cast<double>(i) / static_cast<double>(bands + 1));
  }
  std::vector<double> fb(bands * bins, 0.0);
  for (std::size_t b = 0; b < bands; ++b) {
    const double lo = edges[b];
    const double mid = edges[b + 1];
    const double hi = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate_hz / static_cast<double>(cfg.n_fft);
      double v = 0.0;
      if (f > lo && f <= mid) {
        v = (f - lo) / (mid - lo);
      } else if (f > mid && f < hi) {
        v = (hi - f) / (hi - mid);
      }
      fb[b * bins + k] = v;
    }
  }
  return fb;
}

Spectrogram mel_roundtrip(const Spectrogram& mag, std::size_t bands) {
  const std::size_t bins = mag.config.bins();
  const std::vector<double> fb = mel_filterbank(bands, mag.config, mag.sample_rate_hz);
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> basis(fb.data(), static_cast<Eigen::Index>(bands),
                                         static_cast<Eigen::Index>(bins));
  const Eigen::MatrixXd pinv = basis.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::Map<const RowMajor> frames(mag.magnitude.data(),
                                          static_cast<Eigen::Index>(mag.frames),
                                          static_cast<Eigen::Index>(bins));
  const RowMajor rebuilt = (frames * basis.transpose()) * pinv.transpose();

  Spectrogram out = mag;
  for (std::size_t i = 0; i < out.magnitude.size(); ++i) {
    out.magnitude[i] = std::max(0.0, rebuilt.data()[i]);
  }
  return out;
}

Waveform copy_synth(const Waveform& w, const CopySynthOptions& options) {
  Spectrogram mag = magnitude(stft(w, options.stft));
  if (options.mel_bands > 0) mag = mel_roundtrip(mag, options.mel_bands);
  Waveform out = griffin_lim(mag, options.gl);
  out.samples.resize(w.size(), 0.0f);
  const float in_peak = w.peak();
  const float out_peak = out.peak();
  if (in_peak == 0.0f || out_peak == 0.0f) {
    std::fill(out.samples.begin(), out.samples.end(), 0.0f);
  } else if (options.level == LevelMatch::kPeak) {
    const double gain = static_cast<double>(in_peak) / out_peak;
    for (float& s : out.samples) s = static_cast<float>(s * gain);
  }
  return out;
}

}  // namespace wordspoof
