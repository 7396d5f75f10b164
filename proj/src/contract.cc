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

#include "fairtrade/contract.h"

#include <algorithm>
#include <sstream>

namespace fairtrade::contract {

namespace {

constexpr std::string_view kDeployed = "Deployed";
constexpr std::string_view kRequestAccepted = "RequestAccepted";
constexpr std::string_view kRequestRejected = "RequestRejected";
constexpr std::string_view kReKeyAccepted = "ReKeyAccepted";
constexpr std::string_view kReKeyInvalid = "ReKeyInvalid";
constexpr std::string_view kCompleted = "Completed";
constexpr std::string_view kTicked = "Ticked";
constexpr std::string_view kDeadlinePassed = "DeadlinePassed";
constexpr std::string_view kArbitrated = "Arbitrated";

Bytes U64Bytes(std::uint64_t v) {
  Bytes out;
  AppendU64(out, v);
  return out;
}

std::uint64_t ReadU64(ByteView b) {
  if (b.size() != 8) throw DecodeError("expected 8-byte integer");
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

Bytes DeployPayload(const Listing& listing, const Genesis& genesis) {
  FieldWriter w;
  w.Add(SerializeListing(listing)).AddU64(genesis.timeout).AddU64(genesis.balances.size());
  for (const auto& [account, amount] : genesis.balances) {
    w.Add(account).AddU64(static_cast<std::uint64_t>(amount));
  }
  return w.Take();
}

}  // namespace

Bytes ListingMessage(const Group& group, const upre::OriginalCiphertext& ct,
                     const ContentHash& goods_hash) {
  Bytes msg = upre::Serialize(group, ct);
  msg.insert(msg.end(), goods_hash.digest.begin(), goods_hash.digest.end());
  return msg;
}

Listing PrepareListing(const Group& group, const upre::KeyPair& seller,
                       const ContentHash& goods_hash, const goods::ContentKey& key, Amount price,
                       AccountId seller_account, Rng& rng) {
  upre::OriginalCiphertext ct =
      upre::Encrypt(group, seller.sk, goods::EncodeKey(key, group.params().l0()), rng);
  SchnorrSignature sig =
      SchnorrSign(group, seller.sk.x1, ListingMessage(group, ct, goods_hash), rng);
  return Listing{group.params(), seller.pk, goods_hash, std::move(ct), std::move(sig), price,
                 std::move(seller_account)};
}

Bytes SerializeListing(const Listing& listing) {
  Group group(listing.params);
  FieldWriter w;
  w.Add(listing.params.ToText())
      .Add(upre::Serialize(group, listing.seller_pk))
      .Add(listing.goods_hash.digest)
      .Add(upre::Serialize(group, listing.ct))
      .Add(EncodeSignature(group, listing.sig))
      .AddU64(static_cast<std::uint64_t>(listing.price))
      .Add(listing.seller);
  return w.Take();
}

Listing ParseListing(ByteView bytes) {
  FieldReader r(bytes);
  GroupParams params = GroupParams::FromText(r.NextString());
  Group group(params);
  upre::PublicKey pk = upre::DecodePublicKey(group, r.Next());
  Bytes digest = r.Next();
  if (digest.size() != 32) throw DecodeError("goods hash must be 32 bytes");
  ContentHash hash;
  std::copy(digest.begin(), digest.end(), hash.digest.begin());
  upre::OriginalCiphertext ct = upre::DecodeOriginal(group, r.Next());
  SchnorrSignature sig = DecodeSignature(group, r.Next());
  auto price = static_cast<Amount>(r.NextU64());
  AccountId seller = r.NextString();
  r.ExpectDone();
  return Listing{std::move(params), pk, hash, std::move(ct), std::move(sig), price,
                 std::move(seller)};
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kListed: return "Listed";
    case Phase::kAwaitingReKey: return "AwaitingReKey";
    case Phase::kCompleted: return "Completed";
    case Phase::kRefunded: return "Refunded";
    case Phase::kArbitratedBuyerFault: return "ArbitratedBuyerFault";
    case Phase::kArbitratedSellerFault: return "ArbitratedSellerFault";
  }
  return "?";
}

std::string_view PartyName(Party party) { return party == Party::kBuyer ? "buyer" : "seller"; }

std::string_view StatusName(Status status) {
  switch (status) {
    case Status::kOk: return "ok";
    case Status::kRequestRejected: return "request rejected";
    case Status::kWrongPayment: return "payment does not match price";
    case Status::kInsufficientFunds: return "insufficient funds";
    case Status::kOrderActive: return "another order is active";
    case Status::kWrongPhase: return "operation not allowed in this phase";
    case Status::kExpired: return "expired";
    case Status::kReKeyInvalid: return "re-encryption key invalid";
    case Status::kNotEligible: return "arbitration not eligible";
    case Status::kUnauthorized: return "caller is not the active buyer";
  }
  return "?";
}

Amount ContractState::total_value() const {
  Amount total = escrowed();
  for (const auto& [account, amount] : balances) total += amount;
  return total;
}

bool ContractState::arbitrable() const {
  return phase == Phase::kAwaitingReKey && order &&
         (clock >= order->deadline || order->rekey_invalid_seen);
}

bool ContractState::in_request_list(const GroupElement& pk) const {
  return std::find(request_list.begin(), request_list.end(), pk) != request_list.end();
}

Amount ContractState::balance(const AccountId& account) const {
  auto it = balances.find(account);
  return it == balances.end() ? 0 : it->second;
}

Contract::Contract(Listing listing, Genesis genesis)
    : group_(listing.params),
      state_{std::move(listing), genesis.timeout, {}, std::nullopt, {},
             std::move(genesis.balances), Phase::kListed, {}, 0, {}} {
  state_.balances.try_emplace(state_.listing.seller, 0);
}

Contract Contract::Deploy(Listing listing, Genesis genesis) {
  if (listing.price <= 0) throw DeployError("price must be positive");
  if (genesis.timeout == 0) throw DeployError("timeout must be positive");
  for (const auto& [account, amount] : genesis.balances) {
    if (amount < 0) throw DeployError("negative genesis balance for " + account);
  }
  Group group(listing.params);
  if (listing.sig.signer != listing.seller_pk.pk1) {
    throw DeployError("signature is not by the listed seller key");
  }
  if (!SchnorrVerify(group, listing.sig, ListingMessage(group, listing.ct, listing.goods_hash))) {
    throw DeployError("listing signature does not verify");
  }
  if (!upre::CiphertextWellFormed(group, listing.ct)) {
    throw DeployError("listed ciphertext fails its validity equation");
  }
  Bytes payload = DeployPayload(listing, genesis);
  Contract c(std::move(listing), std::move(genesis));
  c.Emit(std::string(kDeployed), std::move(payload));
  return c;
}

void Contract::Emit(std::string name, Bytes payload) {
  state_.log.push_back(Event{state_.clock, std::move(name), std::move(payload)});
}

Status Contract::SubmitRequest(const AccountId& buyer, const upre::Request& request,
                               Amount payment) {
  if (state_.order) return Status::kOrderActive;
  if (payment != state_.listing.price) return Status::kWrongPayment;
  if (state_.balance(buyer) < payment) return Status::kInsufficientFunds;

  FieldWriter w;
  w.Add(buyer).Add(upre::Serialize(group_, request)).AddU64(static_cast<std::uint64_t>(payment));

  if (state_.in_request_list(request.requester)) {
    // The payment is returned within the same transaction.
    state_.orders.push_back(OrderRecord{buyer, request.requester, payment, payment, 0,
                                        Phase::kRefunded, std::nullopt});
    Emit(std::string(kRequestRejected), w.Take());
    return Status::kRequestRejected;
  }

  state_.balances[buyer] -= payment;
  state_.request_list.push_back(request.requester);
  state_.order = ActiveOrder{buyer, request, payment, state_.clock + state_.timeout, false};
  state_.orders.push_back(OrderRecord{buyer, request.requester, payment, 0, 0,
                                      Phase::kAwaitingReKey, std::nullopt});
  state_.phase = Phase::kAwaitingReKey;
  Emit(std::string(kRequestAccepted), w.Take());
  return Status::kOk;
}

Status Contract::SubmitReKey(const upre::ReKey& rk) {
  if (state_.phase != Phase::kAwaitingReKey || !state_.order) return Status::kWrongPhase;
  ActiveOrder& order = *state_.order;
  if (state_.clock >= order.deadline) return Status::kExpired;

  const upre::OriginalCiphertext& ct = state_.listing.ct;
  bool valid = rk.blinded == order.request.blinded &&
               upre::VerifyReKey(group_, rk.key, ct.base, order.request.commitment);
  std::optional<upre::TransformedCiphertext> transformed;
  if (valid) {
    auto result = upre::ReEncrypt(group_, ct, rk, order.request.commitment);
    if (result) transformed = std::move(result).value();
  }
  if (!transformed) {
    order.rekey_invalid_seen = true;
    Emit(std::string(kReKeyInvalid), upre::Serialize(group_, rk));
    return Status::kReKeyInvalid;
  }
  Emit(std::string(kReKeyAccepted), upre::Serialize(group_, rk));

  const AccountId buyer = order.buyer;
  const Amount amount = order.escrow;
  state_.transformed.insert_or_assign(buyer, std::move(*transformed));
  state_.balances[state_.listing.seller] += amount;
  OrderRecord& record = state_.orders.back();
  record.seller_received = amount;
  record.outcome = Phase::kCompleted;
  state_.order.reset();
  state_.phase = Phase::kCompleted;

  FieldWriter w;
  w.Add(buyer).AddU64(static_cast<std::uint64_t>(amount));
  Emit(std::string(kCompleted), w.Take());
  return Status::kOk;
}

void Contract::Advance(Tick n) {
  if (n == 0) return;
  const Tick before = state_.clock;
  state_.clock += n;
  Emit(std::string(kTicked), U64Bytes(n));
  if (state_.order && before < state_.order->deadline && state_.clock >= state_.order->deadline) {
    Emit(std::string(kDeadlinePassed), U64Bytes(state_.order->deadline));
  }
}

ArbitrationOutcome Contract::ApplyArbitration(const AccountId& caller,
                                              const upre::PrivateKey& sk_j) {
  if (!state_.order) return {Status::kNotEligible, std::nullopt};
  if (caller != state_.order->buyer) return {Status::kUnauthorized, std::nullopt};
  if (!state_.arbitrable()) return {Status::kNotEligible, std::nullopt};

  const ActiveOrder order = *state_.order;
  const upre::Request& r = order.request;
  // pk_j1 = g^x_j1 and g2 = g^(phi / pk_i1^x_j1).
  bool key_matches = group_.GPow(sk_j.x1.value) == r.requester;
  bool request_matches = false;
  if (key_matches) {
    mpz_class shared = group_.Pow(state_.listing.seller_pk.pk1.value, sk_j.x1.value);
    mpz_class h = r.blinded * group_.InverseModP(shared) % group_.p();
    // Same acceptance rule as ReKeyGen, so an h shifted by q is not blamed on the seller.
    request_matches = group_.InScalarRange(h) && group_.GPow(h) == r.commitment;
  }
  Verdict verdict{key_matches && request_matches ? Party::kSeller : Party::kBuyer, true};

  state_.balances[order.buyer] += order.escrow;
  OrderRecord& record = state_.orders.back();
  record.refunded = order.escrow;
  record.verdict = verdict;
  record.outcome = verdict.at_fault == Party::kSeller ? Phase::kArbitratedSellerFault
                                                      : Phase::kArbitratedBuyerFault;
  state_.phase = record.outcome;
  state_.order.reset();

  FieldWriter w;
  w.Add(caller)
      .Add(upre::Serialize(group_, sk_j))
      .Add(Bytes{static_cast<std::uint8_t>(verdict.at_fault == Party::kSeller ? 1 : 0)});
  Emit(std::string(kArbitrated), w.Take());
  return {Status::kOk, verdict};
}

Contract Contract::Replay(const std::vector<Event>& log) {
  if (log.empty() || log.front().name != kDeployed) {
    throw ReplayError("log must start with a Deployed event");
  }
  try {
    FieldReader r(log.front().payload);
    Listing listing = ParseListing(r.Next());
    Genesis genesis;
    genesis.timeout = r.NextU64();
    std::uint64_t accounts = r.NextU64();
    for (std::uint64_t i = 0; i < accounts; ++i) {
      AccountId id = r.NextString();
      genesis.balances[id] = static_cast<Amount>(r.NextU64());
    }
    r.ExpectDone();
    Contract c = Deploy(std::move(listing), std::move(genesis));

    for (std::size_t i = 1; i < log.size(); ++i) {
      const Event& e = log[i];
      if (c.state_.log.size() > i) continue;  // derived event already regenerated
      // Ticked carries the clock after advancing; the log comparison below covers it.
      if (e.name != kTicked && e.tick != c.state_.clock) throw ReplayError("tick mismatch at event " + std::to_string(i));
      if (e.name == kRequestAccepted || e.name == kRequestRejected) {
        FieldReader f(e.payload);
        AccountId buyer = f.NextString();
        upre::Request request = upre::DecodeRequest(c.group_, f.Next());
        auto payment = static_cast<Amount>(f.NextU64());
        c.SubmitRequest(buyer, request, payment);
      } else if (e.name == kReKeyAccepted || e.name == kReKeyInvalid) {
        c.SubmitReKey(upre::DecodeReKey(c.group_, e.payload));
      } else if (e.name == kTicked) {
        c.Advance(ReadU64(e.payload));
      } else if (e.name == kArbitrated) {
        FieldReader f(e.payload);
        AccountId caller = f.NextString();
        upre::PrivateKey sk = upre::DecodePrivateKey(c.group_, f.Next());
        c.ApplyArbitration(caller, sk);
      } else {
        throw ReplayError("unexpected event " + e.name + " at index " + std::to_string(i));
      }
      if (c.state_.log.size() <= i || c.state_.log[i] != e) {
        throw ReplayError("re-execution diverged at event " + std::to_string(i));
      }
    }
    if (c.state_.log != log) throw ReplayError("re-execution produced a different log");
    return c;
  } catch (const DecodeError& e) {
    throw ReplayError(std::string("malformed event payload: ") + e.what());
  } catch (const DeployError& e) {
    throw ReplayError(std::string("deployment replay failed: ") + e.what());
  }
}

std::string FormatEventLog(const std::vector<Event>& log) {
  std::ostringstream out;
  for (const Event& e : log) {
    out << e.tick << ' ' << e.name << ' ' << (e.payload.empty() ? "-" : ToHex(e.payload)) << '\n';
  }
  return out.str();
}

std::vector<Event> ParseEventLog(std::string_view text) {
  std::vector<Event> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    Event e;
    std::string hex;
    if (!(fields >> e.tick >> e.name >> hex)) throw DecodeError("malformed event line: " + line);
    if (hex != "-") e.payload = FromHex(hex);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fairtrade::contract
