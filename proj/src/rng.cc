/*
 * Copyright 2026 The Fairtrade Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairtrade/rng.h"

#include <openssl/rand.h>

#include <algorithm>
#include <stdexcept>

#include "fairtrade/digest.h"

namespace fairtrade {

namespace {
constexpr std::size_t kBlockSize = 136;
}  // namespace

Bytes Rng::RandomBytes(std::size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

mpz_class Rng::RandomBits(std::size_t bits) {
  if (bits == 0) return 0;
  Bytes raw = RandomBytes((bits + 7) / 8);
  if (bits % 8 != 0) raw[0] &= static_cast<std::uint8_t>(0xff >> (8 - bits % 8));
  return DecodeUnsigned(raw);
}

mpz_class Rng::Uniform(const mpz_class& lo, const mpz_class& hi) {
  if (lo > hi) throw std::invalid_argument("empty sampling range");
  mpz_class span = hi - lo;
  std::size_t bits = sgn(span) == 0 ? 0 : mpz_sizeinbase(span.get_mpz_t(), 2);
  for (;;) {
    mpz_class x = RandomBits(bits);
    if (x <= span) return lo + x;
  }
}

BitString Rng::RandomBitString(std::size_t bits) {
  Bytes raw = RandomBytes((bits + 7) / 8);
  if (bits % 8 != 0) raw.back() &= static_cast<std::uint8_t>(0xff << (8 - bits % 8));
  return BitString(std::move(raw), bits);
}

std::uint64_t Rng::NextU64() {
  Bytes raw = RandomBytes(8);
  std::uint64_t v = 0;
  for (std::uint8_t b : raw) v = (v << 8) | b;
  return v;
}

void SystemRng::Fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

DeterministicRng::DeterministicRng(std::uint64_t seed, std::string_view label) {
  FieldWriter w;
  w.Add(std::string_view("fairtrade/drbg/v1")).AddU64(seed).Add(label);
  key_ = w.Take();
  used_ = kBlockSize;
}

void DeterministicRng::Refill() {
  Bytes input = key_;
  AppendU64(input, counter_++);
  block_ = Shake256(input, kBlockSize);
  used_ = 0;
}

void DeterministicRng::Fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == kBlockSize) Refill();
    std::size_t n = std::min(out.size() - pos, kBlockSize - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + pos);
    used_ += n;
    pos += n;
  }
}

}  // namespace fairtrade
