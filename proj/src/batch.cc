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

#include "fairtrade/batch.h"

#include "fairtrade/rng.h"
#include "fairtrade/upre.h"

namespace fairtrade::batch {

namespace {

struct TrialOutcome {
  bool original_ok = false;
  bool transformed_ok = false;
  Sha256Digest digest{};
};

TrialOutcome RunTrial(const GroupParams& params, std::uint64_t seed, std::size_t index) {
  const Group group(params);
  DeterministicRng rng(seed, "trial/" + std::to_string(index));
  upre::KeyPair seller = upre::KeyGen(group, rng);
  upre::KeyPair buyer = upre::KeyGen(group, rng);
  BitString m = rng.RandomBitString(params.l0());

  TrialOutcome out;
  upre::OriginalCiphertext ct = upre::Encrypt(group, seller.sk, m, rng);
  Result<BitString> back = upre::DecryptOriginal(group, seller.sk, ct);
  out.original_ok = back && back.value() == m;

  upre::Request request = upre::MakeRequest(group, buyer, seller.pk, rng);
  Bytes transcript = upre::Serialize(group, ct);
  Result<upre::ReKey> rk = upre::ReKeyGen(group, seller.sk, request, ct.masked);
  if (rk && upre::VerifyReKey(group, rk.value().key, ct.base, request.commitment)) {
    Result<upre::TransformedCiphertext> ct_j =
        upre::ReEncrypt(group, ct, rk.value(), request.commitment);
    if (ct_j) {
      Result<BitString> m_j = upre::DecryptTransformed(group, buyer.sk, seller.pk, ct_j.value());
      out.transformed_ok = m_j && m_j.value() == m;
      Bytes t = upre::Serialize(group, ct_j.value());
      transcript.insert(transcript.end(), t.begin(), t.end());
    }
  }
  out.digest = Sha256(transcript);
  return out;
}

template <typename Fn>
void ForEachIndex(std::size_t n, Execution execution, Fn&& fn) {
  if (execution == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace

CorrectnessReport RunCorrectnessTrials(const GroupParams& params, std::size_t trials,
                                       std::uint64_t seed, Execution execution) {
  std::vector<TrialOutcome> outcomes(trials);
  ForEachIndex(trials, execution, [&](std::size_t i) { outcomes[i] = RunTrial(params, seed, i); });

  CorrectnessReport report;
  report.trials = trials;
  Bytes all;
  for (const TrialOutcome& o : outcomes) {
    if (!o.original_ok) ++report.original_failures;
    if (!o.transformed_ok) ++report.transformed_failures;
    all.insert(all.end(), o.digest.begin(), o.digest.end());
  }
  report.fingerprint = Sha256(all);
  return report;
}

bool MatrixReport::all_pass() const {
  for (const MatrixCell& c : cells) {
    if (c.audit_passes != c.runs || c.conservation_violations != 0) return false;
  }
  return !cells.empty();
}

MatrixReport RunFairnessMatrix(const GroupParams& params, ByteView goods, std::size_t seeds,
                               std::uint64_t base_seed, Execution execution) {
  std::vector<std::pair<harness::Behavior, harness::Behavior>> pairs;
  for (harness::Behavior s : harness::kSellerBehaviors) {
    for (harness::Behavior b : harness::kBuyerBehaviors) pairs.emplace_back(s, b);
  }

  struct RunResult {
    harness::AuditReport audit;
    contract::Phase final_phase = contract::Phase::kListed;
    std::optional<contract::Verdict> verdict;
    std::size_t refunded_requests = 0;
    std::size_t conservation_violations = 0;
    Sha256Digest digest{};
  };
  std::vector<RunResult> results(pairs.size() * seeds);

  ForEachIndex(results.size(), execution, [&](std::size_t i) {
    const auto& [seller, buyer] = pairs[i / seeds];
    harness::ScenarioConfig config;
    config.seller = seller;
    config.buyer = buyer;
    config.seed = base_seed + i % seeds;
    harness::Transcript t = harness::RunScenario(params, goods, config);
    RunResult& r = results[i];
    r.audit = harness::FairnessAudit(t);
    r.final_phase = t.final_phase;
    r.verdict = t.verdict;
    r.conservation_violations = t.conservation_violations;
    for (const harness::OrderAudit& o : t.orders) {
      if (o.record.outcome == contract::Phase::kRefunded) ++r.refunded_requests;
    }
    r.digest = Sha256(ToBytes(t.Serialize()));
  });

  MatrixReport report;
  Bytes all;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    MatrixCell cell;
    cell.seller = pairs[p].first;
    cell.buyer = pairs[p].second;
    for (std::size_t s = 0; s < seeds; ++s) {
      const RunResult& r = results[p * seeds + s];
      ++cell.runs;
      if (r.audit.pass) ++cell.audit_passes;
      if (r.audit.final_branch() == 'a') ++cell.branch_a;
      if (r.audit.final_branch() == 'b') ++cell.branch_b;
      if (r.final_phase == contract::Phase::kCompleted) ++cell.completed;
      if (r.verdict && r.verdict->at_fault == contract::Party::kBuyer) ++cell.buyer_fault;
      if (r.verdict && r.verdict->at_fault == contract::Party::kSeller) ++cell.seller_fault;
      cell.refunded_requests += r.refunded_requests;
      cell.conservation_violations += r.conservation_violations;
      all.insert(all.end(), r.digest.begin(), r.digest.end());
    }
    report.cells.push_back(cell);
  }
  report.fingerprint = Sha256(all);
  return report;
}

}  // namespace fairtrade::batch
