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

#include "fairtrade/bench.h"

#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "fairtrade/group.h"
#include "fairtrade/rng.h"
#include "fairtrade/upre.h"

namespace fairtrade::bench {

namespace {

using Clock = std::chrono::steady_clock;

struct Inputs {
  upre::KeyPair seller;
  upre::KeyPair buyer;
  BitString message;
  upre::OriginalCiphertext ct;
  upre::Request request;
  upre::ReKey rk;
  upre::TransformedCiphertext transformed;
};

Inputs MakeInputs(const Group& group, Rng& rng) {
  Inputs in;
  in.seller = upre::KeyGen(group, rng);
  in.buyer = upre::KeyGen(group, rng);
  in.message = rng.RandomBitString(group.params().l0());
  in.ct = upre::Encrypt(group, in.seller.sk, in.message, rng);
  in.request = upre::MakeRequest(group, in.buyer, in.seller.pk, rng);
  in.rk = upre::ReKeyGen(group, in.seller.sk, in.request, in.ct.masked).value();
  in.transformed = upre::ReEncrypt(group, in.ct, in.rk, in.request.commitment).value();
  return in;
}

// Runs one algorithm on prepared inputs; returns false on an unexpected rejection.
bool Invoke(Algorithm a, const Group& group, const Inputs& in, Rng& rng) {
  switch (a) {
    case Algorithm::kEncrypt:
      upre::Encrypt(group, in.seller.sk, in.message, rng);
      return true;
    case Algorithm::kRequest:
      upre::MakeRequest(group, in.buyer, in.seller.pk, rng);
      return true;
    case Algorithm::kReKeyGen:
      return upre::ReKeyGen(group, in.seller.sk, in.request, in.ct.masked).ok();
    case Algorithm::kVerifyReKey:
      return upre::VerifyReKey(group, in.rk.key, in.ct.base, in.request.commitment);
    case Algorithm::kReEncrypt:
      return upre::ReEncrypt(group, in.ct, in.rk, in.request.commitment).ok();
    case Algorithm::kDecryptOriginal:
      return upre::DecryptOriginal(group, in.seller.sk, in.ct).ok();
    case Algorithm::kDecryptTransformed:
      return upre::DecryptTransformed(group, in.buyer.sk, in.seller.pk, in.transformed).ok();
  }
  return false;
}

SizeRow MeasureSize(std::size_t lq, const BenchOptions& options) {
  DeterministicRng rng(options.seed, "bench/" + std::to_string(lq));
  SetupOptions setup;
  setup.lq = lq;
  setup.l0 = lq / 2;
  setup.l1 = lq / 2;
  const Group group(SetupParams(setup, rng));

  std::vector<Inputs> inputs;
  inputs.reserve(options.runs);
  for (std::size_t i = 0; i < options.runs; ++i) inputs.push_back(MakeInputs(group, rng));

  SizeRow row;
  row.lq = lq;
  row.original_ct_bytes = upre::Serialize(group, inputs.front().ct).size();
  row.transformed_ct_bytes = upre::Serialize(group, inputs.front().transformed).size();
  for (std::size_t k = 0; k < kAlgorithmCount; ++k) {
    const Algorithm a = kAlgorithms[k];
    {
      ExpScope scope(group);
      if (!Invoke(a, group, inputs.front(), rng)) {
        throw std::runtime_error("benchmark input rejected by " + std::string(AlgorithmName(a)));
      }
      row.exp_counts[k] = scope.count();
    }
    Clock::duration total{};
    for (const Inputs& in : inputs) {
      auto start = Clock::now();
      Invoke(a, group, in, rng);
      total += Clock::now() - start;
    }
    row.mean_ms[k] = std::chrono::duration<double, std::milli>(total).count() /
                     static_cast<double>(options.runs);
  }
  return row;
}

}  // namespace

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kEncrypt: return "Encrypt";
    case Algorithm::kRequest: return "Request";
    case Algorithm::kReKeyGen: return "ReKeyGen";
    case Algorithm::kVerifyReKey: return "VerifyReKey";
    case Algorithm::kReEncrypt: return "ReEncrypt";
    case Algorithm::kDecryptOriginal: return "DecryptOriginal";
    case Algorithm::kDecryptTransformed: return "DecryptTransformed";
  }
  return "?";
}

bool BenchReport::TimingStrictlyIncreasing(Algorithm a) const {
  const auto k = static_cast<std::size_t>(a);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].mean_ms[k] > rows[i - 1].mean_ms[k])) return false;
  }
  return true;
}

bool BenchReport::AllTimingsIncreasing() const {
  for (Algorithm a : kAlgorithms) {
    if (!TimingStrictlyIncreasing(a)) return false;
  }
  return true;
}

bool BenchReport::ExpCountsMatchReference() const {
  for (const SizeRow& row : rows) {
    if (row.exp_counts != kReferenceExpCounts) return false;
  }
  return true;
}

std::string BenchReport::ToKeyValue() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "runs=" << runs << "\n";
  for (const SizeRow& row : rows) {
    for (std::size_t k = 0; k < kAlgorithmCount; ++k) {
      out << "lq=" << row.lq << " algorithm=" << AlgorithmName(kAlgorithms[k])
          << " mean_ms=" << row.mean_ms[k] << " exps=" << row.exp_counts[k] << "\n";
    }
    out << "lq=" << row.lq << " orig_ct_bytes=" << row.original_ct_bytes
        << " trans_ct_bytes=" << row.transformed_ct_bytes << "\n";
  }
  for (Algorithm a : kAlgorithms) {
    out << "trend." << AlgorithmName(a) << "=" << (TimingStrictlyIncreasing(a) ? "increasing" : "VIOLATED")
        << "\n";
  }
  out << "exp_counts_match_reference=" << (ExpCountsMatchReference() ? 1 : 0) << "\n";
  return out.str();
}

std::string BenchReport::ToTable() const {
  std::ostringstream out;
  out << std::left << std::setw(20) << "algorithm";
  for (const SizeRow& row : rows) out << std::right << std::setw(14) << ("lq=" + std::to_string(row.lq));
  out << std::right << std::setw(8) << "exps" << "\n";
  out << std::fixed << std::setprecision(3);
  for (std::size_t k = 0; k < kAlgorithmCount; ++k) {
    out << std::left << std::setw(20) << AlgorithmName(kAlgorithms[k]);
    for (const SizeRow& row : rows) out << std::right << std::setw(11) << row.mean_ms[k] << " ms";
    out << std::right << std::setw(8) << (rows.empty() ? 0 : rows.front().exp_counts[k]) << "\n";
  }
  return out.str();
}

BenchReport RunBench(const BenchOptions& options) {
  if (options.runs == 0) throw std::invalid_argument("runs must be positive");
  BenchReport report;
  report.runs = options.runs;
  for (std::size_t lq : options.lq) report.rows.push_back(MeasureSize(lq, options));
  return report;
}

}  // namespace fairtrade::bench
