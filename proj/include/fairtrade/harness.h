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

// Seller and buyer actors driving the contract through a complete sale,
// with honest and adversarial behaviours, plus the bookkeeping needed to
// count interactions and audit the outcome for fairness.

#ifndef FAIRTRADE_HARNESS_H_
#define FAIRTRADE_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairtrade/content_store.h"
#include "fairtrade/contract.h"
#include "fairtrade/group.h"
#include "fairtrade/upre.h"

namespace fairtrade::harness {

using contract::AccountId;
using contract::Amount;
using contract::Tick;

enum class Role { kSeller, kBuyer };

enum class Behavior {
  kHonest,
  kBuyerMalformedRequest,  // random phi in the request
  kBuyerReplayedKey,       // buys again with a key pair already on the request list
  kSellerInvalidReKey,     // submits a re-encryption key that fails verification
  kSellerTimeout,          // never answers the request
};

struct Strategy {
  Role role = Role::kSeller;
  Behavior behavior = Behavior::kHonest;

  // std::invalid_argument if the behaviour belongs to the other role.
  static Strategy Seller(Behavior behavior);
  static Strategy Buyer(Behavior behavior);
};

std::string_view BehaviorName(Behavior behavior);
// Accepts "honest", "malformed-request", "replayed-key", "invalid-rekey",
// "timeout". std::invalid_argument otherwise.
Behavior ParseBehavior(std::string_view name);

inline constexpr Behavior kSellerBehaviors[] = {Behavior::kHonest, Behavior::kSellerInvalidReKey,
                                                Behavior::kSellerTimeout};
inline constexpr Behavior kBuyerBehaviors[] = {Behavior::kHonest, Behavior::kBuyerMalformedRequest,
                                               Behavior::kBuyerReplayedKey};

enum class Actor { kSeller, kBuyer, kContract, kStore };

enum class MessageKind {
  kStoreUpload,         // Phase 1, seller -> store
  kDeploy,              // Phase 2
  kRequest,             // Phase 3, request + payment
  kNotify,              // Phase 4, contract event for the seller
  kRefund,              // Phase 4, request turned away
  kReKey,               // Phase 5
  kPaymentRelease,      // Phase 7, contract -> seller
  kCtAvailable,         // Phase 7, contract -> buyer
  kFetchCt,             // Phase 8, buyer -> contract
  kStoreDownload,       // Phase 8, buyer -> store
  kArbitrationRequest,  // A1
  kVerdict,             // A2, verdict and refund
};

std::string_view ActorName(Actor a);
std::string_view MessageKindName(MessageKind k);

struct Interaction {
  Actor sender = Actor::kSeller;
  Actor receiver = Actor::kContract;
  MessageKind kind = MessageKind::kDeploy;
  Tick tick = 0;
  // Index into Transcript::orders, or -1 before any order exists.
  int order = -1;
};

// Everything the auditor needs to decide, independently of the actors,
// whether a buyer ended up able to decrypt the goods.
struct OrderAudit {
  AccountId buyer;
  upre::KeyPair buyer_keys;
  std::optional<upre::TransformedCiphertext> transformed;
  contract::OrderRecord record;
};

struct Transcript {
  explicit Transcript(GroupParams p) : params(std::move(p)) {}

  GroupParams params;
  Behavior seller_behavior = Behavior::kHonest;
  Behavior buyer_behavior = Behavior::kHonest;
  std::uint64_t seed = 0;

  std::vector<Interaction> interactions;
  std::vector<contract::Event> events;
  contract::Phase final_phase = contract::Phase::kListed;
  std::map<AccountId, Amount> final_balances;
  std::optional<contract::Verdict> verdict;

  upre::PublicKey seller_pk;
  AccountId seller_account;
  Amount price = 0;
  Amount genesis_total = 0;
  // Transitions after which balances + escrow differed from genesis_total.
  std::size_t conservation_violations = 0;
  Sha256Digest goods_digest{};
  Bytes sealed_goods;
  std::vector<OrderAudit> orders;
  // Whether the buyer actor recovered the goods bytes in Phase 8.
  bool buyer_recovered_goods = false;

  // Event log in contract format followed by a key=value summary block.
  std::string Serialize() const;
};

struct ScenarioConfig {
  Behavior seller = Behavior::kHonest;
  Behavior buyer = Behavior::kHonest;
  Amount price = 100;
  std::uint64_t seed = 1;
  Tick timeout = contract::kDefaultTimeout;
};

// Runs Phases 0-8, and A1-A2 when a dispute arises, against a fresh
// contract. Deterministic in (params, goods, config). Uses `store` when
// given, otherwise a private in-memory store.
Transcript RunScenario(const GroupParams& params, ByteView goods, const ScenarioConfig& config,
                       BlobStore* store = nullptr);

// Counting convention:
//   counted      deploy, request+payment, re-key submission, payment
//                release, CT_j availability, CT_j fetch, refund of a
//                rejected request, arbitration request, verdict+refund;
//                the Phase 4 notification only when the seller answers it
//                with a re-key submission in the same order
//   not counted  content-store traffic (upload, download)
// Honest sale: 7. Seller timeout with arbitration: 4. Deployment alone: 1.
std::size_t CountInteractions(const Transcript& t);

struct AuditReport {
  bool pass = true;
  // 'a' (goods delivered and paid) or 'b' (refunded, nothing delivered) per order.
  std::string branches;
  std::vector<std::string> violations;
  // Branch of the last order, or '-' when no order was placed.
  char final_branch() const { return branches.empty() ? '-' : branches.back(); }
};

AuditReport FairnessAudit(const Transcript& t);

// Key=value scenario file: seller, buyer, lq, l0, l1, price, seed, goods,
// timeout. Unknown keys and malformed lines throw std::invalid_argument.
struct ScenarioFile {
  ScenarioConfig config;
  std::size_t lq = 512;
  std::size_t l0 = 256;
  std::size_t l1 = 256;
  std::string goods_path;
};
ScenarioFile ParseScenarioFile(std::string_view text);

}  // namespace fairtrade::harness

#endif  // FAIRTRADE_HARNESS_H_
