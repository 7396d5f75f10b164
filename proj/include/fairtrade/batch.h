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

// Batch runners for the long randomized sweeps: correctness trials and the
// strategy x seed fairness matrix. Every trial draws from its own
// DeterministicRng keyed by (seed, trial index), so the OpenMP runner and
// the serial reference produce identical reports.

#ifndef FAIRTRADE_BATCH_H_
#define FAIRTRADE_BATCH_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fairtrade/digest.h"
#include "fairtrade/group.h"
#include "fairtrade/harness.h"

namespace fairtrade::batch {

enum class Execution { kSerial, kParallel };

struct CorrectnessReport {
  std::size_t trials = 0;
  std::size_t original_failures = 0;
  std::size_t transformed_failures = 0;
  // Hash over every trial's ciphertexts in trial order.
  Sha256Digest fingerprint{};
};

// Each trial: fresh seller/buyer keys and a random l0-bit message, then
// Encrypt -> DecryptOriginal and Encrypt -> Request -> ReKeyGen ->
// VerifyReKey -> ReEncrypt -> DecryptTransformed.
CorrectnessReport RunCorrectnessTrials(const GroupParams& params, std::size_t trials,
                                       std::uint64_t seed, Execution execution);

struct MatrixCell {
  harness::Behavior seller = harness::Behavior::kHonest;
  harness::Behavior buyer = harness::Behavior::kHonest;
  std::size_t runs = 0;
  std::size_t audit_passes = 0;
  std::size_t branch_a = 0;
  std::size_t branch_b = 0;
  std::size_t completed = 0;
  std::size_t buyer_fault = 0;
  std::size_t seller_fault = 0;
  std::size_t refunded_requests = 0;
  std::size_t conservation_violations = 0;
};

struct MatrixReport {
  std::vector<MatrixCell> cells;
  Sha256Digest fingerprint{};
  bool all_pass() const;
};

// All (seller, buyer) behaviour pairs x `seeds` runs each.
MatrixReport RunFairnessMatrix(const GroupParams& params, ByteView goods, std::size_t seeds,
                               std::uint64_t base_seed, Execution execution);

}  // namespace fairtrade::batch

#endif  // FAIRTRADE_BATCH_H_
