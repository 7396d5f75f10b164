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

#ifndef FAIRTRADE_RNG_H_
#define FAIRTRADE_RNG_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "fairtrade/bytes.h"

namespace fairtrade {

// Source of randomness injected into every sampling operation.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void Fill(std::span<std::uint8_t> out) = 0;

  Bytes RandomBytes(std::size_t n);
  // Uniform integer with at most `bits` bits.
  mpz_class RandomBits(std::size_t bits);
  // Uniform integer in [lo, hi] by rejection sampling. Requires lo <= hi.
  mpz_class Uniform(const mpz_class& lo, const mpz_class& hi);
  BitString RandomBitString(std::size_t bits);
  std::uint64_t NextU64();
};

// Operating-system entropy (OpenSSL RAND_bytes).
class SystemRng final : public Rng {
 public:
  void Fill(std::span<std::uint8_t> out) override;
};

// Reproducible stream keyed by (seed, label). Two instances with the same
// key produce the same bytes; different labels give independent streams.
class DeterministicRng final : public Rng {
 public:
  explicit DeterministicRng(std::uint64_t seed, std::string_view label = "");
  void Fill(std::span<std::uint8_t> out) override;

 private:
  void Refill();

  Bytes key_;
  Bytes block_;
  std::size_t used_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace fairtrade

#endif  // FAIRTRADE_RNG_H_
