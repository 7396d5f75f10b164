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

#include "fairtrade/harness.h"

#include <sstream>
#include <stdexcept>

#include "fairtrade/goods.h"
#include "fairtrade/schnorr.h"

namespace fairtrade::harness {

namespace {

constexpr const char* kSellerAccount = "seller";
constexpr const char* kBuyerAccount = "buyer";

bool IsSellerBehavior(Behavior b) {
  return b == Behavior::kHonest || b == Behavior::kSellerInvalidReKey ||
         b == Behavior::kSellerTimeout;
}

bool IsBuyerBehavior(Behavior b) {
  return b == Behavior::kHonest || b == Behavior::kBuyerMalformedRequest ||
         b == Behavior::kBuyerReplayedKey;
}

// Drives one scenario; owns the contract and both actors' private state.
class Scenario {
 public:
  Scenario(const GroupParams& params, ByteView goods, const ScenarioConfig& config,
           BlobStore& store)
      : group_(params),
        goods_(goods),
        config_(config),
        store_(store),
        seller_rng_(config.seed, "seller"),
        buyer_rng_(config.seed, "buyer"),
        transcript_(params) {
    transcript_.seller_behavior = config.seller;
    transcript_.buyer_behavior = config.buyer;
    transcript_.seed = config.seed;
    transcript_.price = config.price;
    transcript_.seller_account = kSellerAccount;
    transcript_.goods_digest = Sha256(goods);
  }

  Transcript Run() {
    // Phase 0.
    seller_keys_ = upre::KeyGen(group_, seller_rng_);
    transcript_.seller_pk = seller_keys_.pk;

    // Phase 1.
    goods::WrappedGoods wrapped = goods::WrapGoods(goods_, seller_rng_);
    transcript_.sealed_goods = wrapped.sealed.Serialize();
    ContentHash goods_hash = store_.Put(transcript_.sealed_goods);
    Record(Actor::kSeller, Actor::kStore, MessageKind::kStoreUpload);

    // Phase 2.
    contract::Listing listing =
        contract::PrepareListing(group_, seller_keys_, goods_hash, wrapped.key, config_.price,
                                 kSellerAccount, seller_rng_);
    contract::Genesis genesis;
    genesis.timeout = config_.timeout;
    genesis.balances[kBuyerAccount] = 3 * config_.price;
    genesis.balances[kSellerAccount] = 0;
    contract_.emplace(contract::Contract::Deploy(std::move(listing), std::move(genesis)));
    transcript_.genesis_total = contract_->state().total_value();
    Record(Actor::kSeller, Actor::kContract, MessageKind::kDeploy);

    // Phase 3 onwards. A replaying buyer comes back with the same key pair.
    upre::KeyPair buyer_keys = upre::KeyGen(group_, buyer_rng_);
    const int attempts = config_.buyer == Behavior::kBuyerReplayedKey ? 2 : 1;
    for (int i = 0; i < attempts; ++i) RunOrder(buyer_keys);

    const contract::ContractState& s = contract_->state();
    transcript_.events = s.log;
    transcript_.final_phase = s.phase;
    transcript_.final_balances = s.balances;
    for (std::size_t i = 0; i < transcript_.orders.size(); ++i) {
      transcript_.orders[i].record = s.orders.at(i);
    }
    return std::move(transcript_);
  }

 private:
  void Record(Actor from, Actor to, MessageKind kind) {
    int order = static_cast<int>(transcript_.orders.size()) - 1;
    Tick tick = contract_ ? contract_->state().clock : 0;
    transcript_.interactions.push_back(Interaction{from, to, kind, tick, order});
  }

  void CheckConservation() {
    if (contract_->state().total_value() != transcript_.genesis_total) {
      ++transcript_.conservation_violations;
    }
  }

  void Advance(Tick n) {
    contract_->Advance(n);
    CheckConservation();
  }

  void RunOrder(const upre::KeyPair& buyer_keys) {
    const contract::Listing& listing = contract_->state().listing;
    // The buyer checks the listing signature before paying.
    if (!SchnorrVerify(group_, listing.sig,
                       contract::ListingMessage(group_, listing.ct, listing.goods_hash))) {
      return;
    }

    upre::Request request = upre::MakeRequest(group_, buyer_keys, listing.seller_pk, buyer_rng_);
    if (config_.buyer == Behavior::kBuyerMalformedRequest) {
      mpz_class forged;
      do {
        forged = buyer_rng_.Uniform(1, group_.p() - 1);
      } while (forged == request.blinded);
      request.blinded = forged;
    }

    transcript_.orders.push_back(OrderAudit{kBuyerAccount, buyer_keys, std::nullopt, {}});
    Advance(1);
    contract::Status status = contract_->SubmitRequest(kBuyerAccount, request, config_.price);
    CheckConservation();
    Record(Actor::kBuyer, Actor::kContract, MessageKind::kRequest);
    if (status == contract::Status::kRequestRejected) {
      Record(Actor::kContract, Actor::kBuyer, MessageKind::kRefund);
      return;
    }
    if (status != contract::Status::kOk) {
      throw std::logic_error(std::string("unexpected request status: ") +
                             std::string(contract::StatusName(status)));
    }
    Record(Actor::kContract, Actor::kSeller, MessageKind::kNotify);

    // Phase 5: the seller reads R from the contract.
    if (auto rk = SellerReKey(); rk) {
      Advance(1);
      status = contract_->SubmitReKey(*rk);
      CheckConservation();
      Record(Actor::kSeller, Actor::kContract, MessageKind::kReKey);
      if (status == contract::Status::kOk) {
        Record(Actor::kContract, Actor::kSeller, MessageKind::kPaymentRelease);
        Record(Actor::kContract, Actor::kBuyer, MessageKind::kCtAvailable);
        BuyerDecrypts(buyer_keys);
        return;
      }
    }

    // Dispute: wait out the deadline unless an invalid key already made the
    // order arbitrable, then disclose sk_j.
    if (!contract_->state().arbitrable()) {
      Advance(contract_->state().order->deadline - contract_->state().clock);
    }
    Record(Actor::kBuyer, Actor::kContract, MessageKind::kArbitrationRequest);
    contract::ArbitrationOutcome outcome =
        contract_->ApplyArbitration(kBuyerAccount, buyer_keys.sk);
    CheckConservation();
    if (outcome.status != contract::Status::kOk) {
      throw std::logic_error("arbitration unexpectedly refused");
    }
    transcript_.verdict = outcome.verdict;
    Record(Actor::kContract, Actor::kBuyer, MessageKind::kVerdict);
  }

  std::optional<upre::ReKey> SellerReKey() {
    const contract::ContractState& s = contract_->state();
    const upre::Request& request = s.order->request;
    Result<upre::ReKey> rk = upre::ReKeyGen(group_, seller_keys_.sk, request, s.listing.ct.masked);
    switch (config_.seller) {
      case Behavior::kSellerTimeout:
        return std::nullopt;
      case Behavior::kSellerInvalidReKey: {
        upre::ReKey bad{group_.RandomScalar(seller_rng_), request.blinded};
        if (rk) {
          bad = rk.value();
          bad.key.value = bad.key.value % (group_.q() - 1) + 1;  // rk + 1, kept in [1, q-1]
        }
        return bad;
      }
      default:
        // An honest seller cannot answer a malformed request.
        if (!rk) return std::nullopt;
        return rk.value();
    }
  }

  void BuyerDecrypts(const upre::KeyPair& buyer_keys) {
    Record(Actor::kBuyer, Actor::kContract, MessageKind::kFetchCt);
    const contract::ContractState& s = contract_->state();
    const upre::TransformedCiphertext& ct = s.transformed.at(kBuyerAccount);
    transcript_.orders.back().transformed = ct;

    Result<BitString> m = upre::DecryptTransformed(group_, buyer_keys.sk, s.listing.seller_pk, ct);
    if (!m) return;
    goods::ContentKey key = goods::DecodeKey(m.value());
    Record(Actor::kBuyer, Actor::kStore, MessageKind::kStoreDownload);
    std::optional<Bytes> sealed = store_.Get(s.listing.goods_hash);
    if (!sealed) return;
    std::optional<Bytes> plain = goods::UnwrapGoods(goods::SealedGoods::Parse(*sealed), key);
    transcript_.buyer_recovered_goods =
        plain && plain->size() == goods_.size() && std::equal(plain->begin(), plain->end(), goods_.begin());
  }

  Group group_;
  ByteView goods_;
  ScenarioConfig config_;
  BlobStore& store_;
  DeterministicRng seller_rng_;
  DeterministicRng buyer_rng_;
  Transcript transcript_;
  upre::KeyPair seller_keys_;
  std::optional<contract::Contract> contract_;
};

std::string VerdictText(const std::optional<contract::Verdict>& v) {
  if (!v) return "none";
  return std::string(contract::PartyName(v->at_fault)) + (v->refund_issued ? "+refund" : "");
}

}  // namespace

Strategy Strategy::Seller(Behavior behavior) {
  if (!IsSellerBehavior(behavior)) throw std::invalid_argument("behaviour is not a seller behaviour");
  return {Role::kSeller, behavior};
}

Strategy Strategy::Buyer(Behavior behavior) {
  if (!IsBuyerBehavior(behavior)) throw std::invalid_argument("behaviour is not a buyer behaviour");
  return {Role::kBuyer, behavior};
}

std::string_view BehaviorName(Behavior behavior) {
  switch (behavior) {
    case Behavior::kHonest: return "honest";
    case Behavior::kBuyerMalformedRequest: return "malformed-request";
    case Behavior::kBuyerReplayedKey: return "replayed-key";
    case Behavior::kSellerInvalidReKey: return "invalid-rekey";
    case Behavior::kSellerTimeout: return "timeout";
  }
  return "?";
}

Behavior ParseBehavior(std::string_view name) {
  for (Behavior b : {Behavior::kHonest, Behavior::kBuyerMalformedRequest, Behavior::kBuyerReplayedKey,
                     Behavior::kSellerInvalidReKey, Behavior::kSellerTimeout}) {
    if (BehaviorName(b) == name) return b;
  }
  throw std::invalid_argument("unknown behaviour: " + std::string(name));
}

std::string_view ActorName(Actor a) {
  switch (a) {
    case Actor::kSeller: return "seller";
    case Actor::kBuyer: return "buyer";
    case Actor::kContract: return "contract";
    case Actor::kStore: return "store";
  }
  return "?";
}

std::string_view MessageKindName(MessageKind k) {
  switch (k) {
    case MessageKind::kStoreUpload: return "store-upload";
    case MessageKind::kDeploy: return "deploy";
    case MessageKind::kRequest: return "request";
    case MessageKind::kNotify: return "notify";
    case MessageKind::kRefund: return "refund";
    case MessageKind::kReKey: return "rekey";
    case MessageKind::kPaymentRelease: return "payment-release";
    case MessageKind::kCtAvailable: return "ct-available";
    case MessageKind::kFetchCt: return "fetch-ct";
    case MessageKind::kStoreDownload: return "store-download";
    case MessageKind::kArbitrationRequest: return "arbitration-request";
    case MessageKind::kVerdict: return "verdict";
  }
  return "?";
}

Transcript RunScenario(const GroupParams& params, ByteView goods, const ScenarioConfig& config,
                       BlobStore* store) {
  if (goods.empty()) throw std::invalid_argument("goods must be non-empty");
  if (!IsSellerBehavior(config.seller)) throw std::invalid_argument("invalid seller behaviour");
  if (!IsBuyerBehavior(config.buyer)) throw std::invalid_argument("invalid buyer behaviour");
  InMemoryBlobStore local;
  Scenario scenario(params, goods, config, store ? *store : local);
  return scenario.Run();
}

std::size_t CountInteractions(const Transcript& t) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.interactions.size(); ++i) {
    const Interaction& it = t.interactions[i];
    switch (it.kind) {
      case MessageKind::kStoreUpload:
      case MessageKind::kStoreDownload:
        break;
      case MessageKind::kNotify: {
        bool answered = false;
        for (std::size_t j = i + 1; j < t.interactions.size(); ++j) {
          const Interaction& later = t.interactions[j];
          if (later.order != it.order) break;
          if (later.sender == it.receiver && later.receiver == Actor::kContract) {
            answered = true;
            break;
          }
        }
        if (answered) ++count;
        break;
      }
      default:
        ++count;
    }
  }
  return count;
}

AuditReport FairnessAudit(const Transcript& t) {
  AuditReport report;
  auto violation = [&](std::string what) {
    report.pass = false;
    report.violations.push_back(std::move(what));
  };

  Amount final_total = 0;
  for (const auto& [account, amount] : t.final_balances) final_total += amount;
  if (final_total != t.genesis_total) violation("currency not conserved at termination");
  if (t.conservation_violations != 0) violation("escrow conservation broken during the run");

  const Group group(t.params);
  std::optional<goods::SealedGoods> sealed;
  try {
    sealed = goods::SealedGoods::Parse(t.sealed_goods);
  } catch (const DecodeError&) {
    violation("sealed goods unreadable");
  }

  for (std::size_t i = 0; i < t.orders.size(); ++i) {
    const OrderAudit& o = t.orders[i];
    const contract::OrderRecord& r = o.record;
    const std::string tag = "order " + std::to_string(i) + ": ";

    bool can_decrypt = false;
    if (o.transformed && sealed) {
      Result<BitString> m = upre::DecryptTransformed(group, o.buyer_keys.sk, t.seller_pk, *o.transformed);
      if (m) {
        try {
          std::optional<Bytes> plain = goods::UnwrapGoods(*sealed, goods::DecodeKey(m.value()));
          can_decrypt = plain && Sha256(*plain) == t.goods_digest;
        } catch (const std::invalid_argument&) {
        }
      }
    }

    const bool delivered_and_paid = can_decrypt && r.seller_received == t.price && r.refunded == 0 &&
                                    r.paid == t.price;
    const bool refunded_nothing_delivered =
        !can_decrypt && r.seller_received == 0 && r.refunded == r.paid;
    if (delivered_and_paid) {
      report.branches.push_back('a');
    } else if (refunded_nothing_delivered) {
      report.branches.push_back('b');
    } else {
      report.branches.push_back('!');
      std::ostringstream what;
      what << tag << "buyer_can_decrypt=" << can_decrypt << " paid=" << r.paid
           << " refunded=" << r.refunded << " seller_received=" << r.seller_received;
      violation(what.str());
    }
  }
  return report;
}

std::string Transcript::Serialize() const {
  std::ostringstream out;
  out << contract::FormatEventLog(events);
  out << "# summary\n";
  out << "seller_strategy=" << BehaviorName(seller_behavior) << "\n";
  out << "buyer_strategy=" << BehaviorName(buyer_behavior) << "\n";
  out << "seed=" << seed << "\n";
  out << "final_phase=" << contract::PhaseName(final_phase) << "\n";
  out << "verdict=" << VerdictText(verdict) << "\n";
  out << "interactions=" << CountInteractions(*this) << "\n";
  for (const Interaction& it : interactions) {
    out << "message=" << it.tick << ' ' << ActorName(it.sender) << "->" << ActorName(it.receiver)
        << ' ' << MessageKindName(it.kind) << "\n";
  }
  for (const auto& [account, amount] : final_balances) {
    out << "balance." << account << "=" << amount << "\n";
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const contract::OrderRecord& r = orders[i].record;
    out << "order." << i << "=" << r.buyer << " outcome=" << contract::PhaseName(r.outcome)
        << " paid=" << r.paid << " refunded=" << r.refunded
        << " seller_received=" << r.seller_received << " verdict=" << VerdictText(r.verdict) << "\n";
  }
  out << "goods_sha256=" << ToHex(goods_digest) << "\n";
  out << "buyer_recovered_goods=" << (buyer_recovered_goods ? 1 : 0) << "\n";
  return out.str();
}

ScenarioFile ParseScenarioFile(std::string_view text) {
  ScenarioFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  auto to_u64 = [](const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || v.empty()) throw std::invalid_argument("bad number for " + key + ": " + v);
    return static_cast<std::uint64_t>(n);
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("scenario line without '=': " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "seller") {
      file.config.seller = Strategy::Seller(ParseBehavior(value)).behavior;
    } else if (key == "buyer") {
      file.config.buyer = Strategy::Buyer(ParseBehavior(value)).behavior;
    } else if (key == "lq") {
      file.lq = to_u64(key, value);
    } else if (key == "l0") {
      file.l0 = to_u64(key, value);
    } else if (key == "l1") {
      file.l1 = to_u64(key, value);
    } else if (key == "price") {
      file.config.price = static_cast<Amount>(to_u64(key, value));
    } else if (key == "seed") {
      file.config.seed = to_u64(key, value);
    } else if (key == "timeout") {
      file.config.timeout = to_u64(key, value);
    } else if (key == "goods") {
      file.goods_path = value;
    } else {
      throw std::invalid_argument("unknown scenario key: " + key);
    }
  }
  return file;
}

}  // namespace fairtrade::harness
