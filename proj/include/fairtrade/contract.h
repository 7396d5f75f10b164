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

// Deterministic model of the escrow contract that mediates a sale: listing,
// request list, escrowed payment, on-chain re-key verification and
// re-encryption, deadline, and arbitration.
//
// All mutations go through one Contract object; every accepted mutation
// appends to an append-only event log from which Replay() rebuilds the
// identical state.

#ifndef FAIRTRADE_CONTRACT_H_
#define FAIRTRADE_CONTRACT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairtrade/bytes.h"
#include "fairtrade/content_store.h"
#include "fairtrade/goods.h"
#include "fairtrade/group.h"
#include "fairtrade/schnorr.h"
#include "fairtrade/upre.h"

namespace fairtrade::contract {

using AccountId = std::string;
using Amount = std::int64_t;
using Tick = std::uint64_t;

inline constexpr Tick kDefaultTimeout = 100;

struct Listing {
  GroupParams params;
  upre::PublicKey seller_pk;
  ContentHash goods_hash;
  upre::OriginalCiphertext ct;
  SchnorrSignature sig;
  Amount price = 0;
  AccountId seller;
};

// Bytes covered by the listing signature: Serialize(ct) || goods digest.
Bytes ListingMessage(const Group& group, const upre::OriginalCiphertext& ct,
                     const ContentHash& goods_hash);

// Seller-side preparation: encrypts the content key and signs the result.
Listing PrepareListing(const Group& group, const upre::KeyPair& seller,
                       const ContentHash& goods_hash, const goods::ContentKey& key, Amount price,
                       AccountId seller_account, Rng& rng);

Bytes SerializeListing(const Listing& listing);
Listing ParseListing(ByteView bytes);

enum class Phase {
  kListed,
  kAwaitingReKey,
  kCompleted,
  kRefunded,
  kArbitratedBuyerFault,
  kArbitratedSellerFault,
};
std::string_view PhaseName(Phase phase);

enum class Party { kBuyer, kSeller };
std::string_view PartyName(Party party);

struct Verdict {
  Party at_fault = Party::kBuyer;
  bool refund_issued = false;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct ActiveOrder {
  AccountId buyer;
  upre::Request request;
  Amount escrow = 0;
  Tick deadline = 0;
  bool rekey_invalid_seen = false;
};

// Settlement of one submitted request. `outcome` is kRefunded for a request
// turned away by the request list.
struct OrderRecord {
  AccountId buyer;
  GroupElement requester;
  Amount paid = 0;
  Amount refunded = 0;
  Amount seller_received = 0;
  Phase outcome = Phase::kAwaitingReKey;
  std::optional<Verdict> verdict;
};

struct Event {
  Tick tick = 0;
  std::string name;
  Bytes payload;
  friend bool operator==(const Event&, const Event&) = default;
};

struct ContractState {
  Listing listing;
  Tick timeout = kDefaultTimeout;
  std::vector<GroupElement> request_list;
  std::optional<ActiveOrder> order;
  std::map<AccountId, upre::TransformedCiphertext> transformed;
  std::map<AccountId, Amount> balances;
  Phase phase = Phase::kListed;
  std::vector<Event> log;
  Tick clock = 0;
  std::vector<OrderRecord> orders;

  Amount escrowed() const { return order ? order->escrow : 0; }
  // Sum of balances plus escrow; constant after deployment.
  Amount total_value() const;
  bool arbitrable() const;
  bool in_request_list(const GroupElement& pk) const;
  Amount balance(const AccountId& account) const;
};

enum class Status {
  kOk,
  kRequestRejected,
  kWrongPayment,
  kInsufficientFunds,
  kOrderActive,
  kWrongPhase,
  kExpired,
  kReKeyInvalid,
  kNotEligible,
  kUnauthorized,
};
std::string_view StatusName(Status status);

class DeployError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Genesis {
  std::map<AccountId, Amount> balances;
  Tick timeout = kDefaultTimeout;
};

struct ArbitrationOutcome {
  Status status = Status::kNotEligible;
  std::optional<Verdict> verdict;
};

class Contract {
 public:
  // Rejects a listing whose signature, ciphertext or price is invalid.
  static Contract Deploy(Listing listing, Genesis genesis);

  // Rebuilds a contract from its event log and checks that re-execution
  // reproduces the log exactly.
  static Contract Replay(const std::vector<Event>& log);

  // Escrows the payment and records pk_j1 in the request list, or turns the
  // request away (kRequestRejected) when pk_j1 was seen before.
  Status SubmitRequest(const AccountId& buyer, const upre::Request& request, Amount payment);

  // Verifies rk against V and g2; on success re-encrypts, stores CT_j for the
  // buyer and releases the escrow to the seller.
  Status SubmitReKey(const upre::ReKey& rk);

  void Advance(Tick n);

  // Buyer discloses sk_j. Both verdicts refund the escrow to the buyer.
  ArbitrationOutcome ApplyArbitration(const AccountId& caller, const upre::PrivateKey& sk_j);

  const ContractState& state() const { return state_; }
  const std::vector<Event>& events() const { return state_.log; }
  const Group& group() const { return group_; }

 private:
  Contract(Listing listing, Genesis genesis);
  void Emit(std::string name, Bytes payload);

  Group group_;
  ContractState state_;
};

// One line per event: "<tick> <name> <hex payload>".
std::string FormatEventLog(const std::vector<Event>& log);
std::vector<Event> ParseEventLog(std::string_view text);

}  // namespace fairtrade::contract

#endif  // FAIRTRADE_CONTRACT_H_
