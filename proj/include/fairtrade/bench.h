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

#ifndef FAIRTRADE_BENCH_H_
#define FAIRTRADE_BENCH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fairtrade::bench {

enum class Algorithm {
  kEncrypt,
  kRequest,
  kReKeyGen,
  kVerifyReKey,
  kReEncrypt,
  kDecryptOriginal,
  kDecryptTransformed,
};
inline constexpr std::size_t kAlgorithmCount = 7;
inline constexpr std::array<Algorithm, kAlgorithmCount> kAlgorithms = {
    Algorithm::kEncrypt,     Algorithm::kRequest,         Algorithm::kReKeyGen,
    Algorithm::kVerifyReKey, Algorithm::kReEncrypt,       Algorithm::kDecryptOriginal,
    Algorithm::kDecryptTransformed};

std::string_view AlgorithmName(Algorithm a);

// Reference per-call exponentiation counts.
inline constexpr std::array<std::uint64_t, kAlgorithmCount> kReferenceExpCounts = {4, 2, 2, 1,
                                                                                  4, 4, 3};

struct SizeRow {
  std::size_t lq = 0;
  std::array<double, kAlgorithmCount> mean_ms{};
  std::array<std::uint64_t, kAlgorithmCount> exp_counts{};
  std::size_t original_ct_bytes = 0;
  std::size_t transformed_ct_bytes = 0;
};

struct BenchReport {
  std::size_t runs = 0;
  std::vector<SizeRow> rows;

  // Per algorithm: mean time strictly increases with lq across rows.
  bool TimingStrictlyIncreasing(Algorithm a) const;
  bool AllTimingsIncreasing() const;
  bool ExpCountsMatchReference() const;

  std::string ToKeyValue() const;
  std::string ToTable() const;
};

struct BenchOptions {
  std::vector<std::size_t> lq = {256, 512, 1024};
  std::size_t runs = 50;
  std::uint64_t seed = 2024;
};

// l0 = l1 = lq / 2 at every size. Sizes run one after another.
BenchReport RunBench(const BenchOptions& options);

}  // namespace fairtrade::bench

#endif  // FAIRTRADE_BENCH_H_
