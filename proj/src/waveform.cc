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

#include "wordspoof/waveform.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "wordspoof/error.h"

namespace wordspoof {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24;
}

std::uint16_t le16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(
      static_cast<unsigned char>(b[at]) |
      static_cast<unsigned char>(b[at + 1]) << 8);
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

Error bad(const std::string& what) { return Error(ErrorKind::kFormat, "WAV: " + what); }

}  // namespace

std::size_t Waveform::index_at(double t) const {
  const double idx = std::round(t * sample_rate_hz);
  return idx <= 0.0 ? 0 : static_cast<std::size_t>(idx);
}

float Waveform::peak() const {
  float p = 0.0f;
  for (float s : samples) p = std::max(p, std::abs(s));
  return p;
}

bool Waveform::all_finite() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](float s) { return std::isfinite(s); });
}

Waveform decode_wav(std::string_view b, WavFormat* format) {
  if (b.size() < 12 || b.substr(0, 4) != "RIFF" || b.substr(8, 4) != "WAVE") {
    throw bad("not a RIFF/WAVE stream");
  }
  std::size_t pos = 12;
  bool have_fmt = false;
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  while (pos + 8 <= b.size()) {
    const std::string_view id = b.substr(pos, 4);
    const std::uint32_t size = le32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + size > b.size()) throw bad("truncated fmt chunk");
      tag = le16(b, body);
      channels = le16(b, body + 2);
      rate = le32(b, body + 4);
      bits = le16(b, body + 14);
      if (tag == kFormatExtensible) {
        if (size < 40) throw bad("truncated extensible fmt chunk");
        tag = le16(b, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw bad("data chunk before fmt chunk");
      if (channels != 1) {
        throw bad("only mono audio is supported (got " + std::to_string(channels) +
                  " channels)");
      }
      if (rate == 0) throw bad("zero sample rate");
      const std::size_t avail = std::min<std::size_t>(size, b.size() - body);
      Waveform w;
      w.sample_rate_hz = static_cast<int>(rate);
      if (tag == kFormatPcm && bits == 16) {
        w.samples.resize(avail / 2);
        for (std::size_t i = 0; i < w.samples.size(); ++i) {
          const auto v = static_cast<std::int16_t>(le16(b, body + 2 * i));
          w.samples[i] = static_cast<float>(v) / 32768.0f;
        }
        if (format) *format = WavFormat::kPcm16;
      } else if (tag == kFormatFloat && bits == 32) {
        w.samples.resize(avail / 4);
        for (std::size_t i = 0; i < w.samples.size(); ++i) {
          w.samples[i] = std::bit_cast<float>(le32(b, body + 4 * i));
        }
        if (!w.all_finite()) throw bad("non-finite float samples");
        if (format) *format = WavFormat::kFloat32;
      } else {
        throw bad("unsupported encoding (format tag " + std::to_string(tag) +
                  ", " + std::to_string(bits) + " bits)");
      }
      return w;
    }
    pos = body + size + (size & 1);
  }
  throw bad("no data chunk");
}

std::string encode_wav(const Waveform& w, WavFormat format) {
  const std::uint16_t bits = format == WavFormat::kPcm16 ? 16 : 32;
  const std::uint32_t bytes_per_sample = bits / 8;
  const auto data_size = static_cast<std::uint32_t>(w.samples.size() * bytes_per_sample);
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put32(out, 36 + data_size);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, format == WavFormat::kPcm16 ? kFormatPcm : kFormatFloat);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(w.sample_rate_hz));
  put32(out, static_cast<std::uint32_t>(w.sample_rate_hz) * bytes_per_sample);
  put16(out, static_cast<std::uint16_t>(bytes_per_sample));
  put16(out, bits);
  out += "data";
  put32(out, data_size);
  for (float s : w.samples) {
    if (format == WavFormat::kPcm16) {
      const float c = std::isfinite(s) ? std::clamp(s, -1.0f, 1.0f) : 0.0f;
      const long v = std::clamp(std::lround(c * 32768.0f), -32768L, 32767L);
      put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    } else {
      put32(out, std::bit_cast<std::uint32_t>(s));
    }
  }
  return out;
}

Waveform read_wav(const std::string& path, WavFormat* format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes, format);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void write_wav(const std::string& path, const Waveform& w, WavFormat format) {
  const std::string bytes = encode_wav(w, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path);
}

}  // namespace wordspoof
