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

#include <gtest/gtest.h>

#include <set>

#include "test_support.h"

namespace fairtrade::contract {
namespace {

constexpr Amount kPrice = 100;
constexpr Tick kTimeout = 10;

class ContractTest : public ::testing::Test {
 protected:
  ContractTest() : group_(testing::CachedParams(256, 256, 256)) {
    seller_ = upre::KeyGen(group_, rng_);
    rng_.Fill(key_.bytes);
    hash_ = ContentHash::Of(ToBytes("sealed goods"));
  }

  Listing MakeListing() {
    return PrepareListing(group_, seller_, hash_, key_, kPrice, "seller", rng_);
  }

  Contract Fresh() {
    Genesis genesis{{{"alice", 1000}, {"bob", 1000}}, kTimeout};
    return Contract::Deploy(MakeListing(), genesis);
  }

  upre::KeyPair NewBuyer() { return upre::KeyGen(group_, rng_); }

  upre::Request RequestFor(const upre::KeyPair& buyer) {
    return upre::MakeRequest(group_, buyer, seller_.pk, rng_);
  }

  upre::ReKey HonestReKey(const Contract& c) {
    return upre::ReKeyGen(group_, seller_.sk, c.state().order->request, c.state().listing.ct.masked)
        .value();
  }

  std::vector<std::string> Names(const Contract& c) {
    std::vector<std::string> out;
    for (const Event& e : c.events()) out.push_back(e.name);
    return out;
  }

  Group group_;
  DeterministicRng rng_{42};
  upre::KeyPair seller_;
  goods::ContentKey key_;
  ContentHash hash_;
};

TEST_F(ContractTest, DeployValidListing) {
  Contract c = Fresh();
  EXPECT_EQ(c.state().phase, Phase::kListed);
  EXPECT_EQ(Names(c), std::vector<std::string>{"Deployed"});
  EXPECT_EQ(c.state().total_value(), 2000);
  EXPECT_EQ(c.state().balance("seller"), 0);
  // The listed ciphertext carries the content key.
  auto m = upre::DecryptOriginal(group_, seller_.sk, c.state().listing.ct);
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(goods::DecodeKey(m.value()), key_);
}

TEST_F(ContractTest, DeployRejectsBadListings) {
  Genesis genesis{{{"alice", 1000}}, kTimeout};
  Listing l = MakeListing();
  l.price = 0;
  EXPECT_THROW(Contract::Deploy(l, genesis), DeployError);

  l = MakeListing();
  l.goods_hash = ContentHash::Of(ToBytes("other goods"));  // signature covers the digest
  EXPECT_THROW(Contract::Deploy(l, genesis), DeployError);

  l = MakeListing();
  Listing other = MakeListing();
  l.ct = other.ct;  // signature over different ciphertext bytes
  EXPECT_THROW(Contract::Deploy(l, genesis), DeployError);

  l = MakeListing();
  upre::KeyPair impostor = upre::KeyGen(group_, rng_);
  l.sig = SchnorrSign(group_, impostor.sk.x1, ListingMessage(group_, l.ct, l.goods_hash), rng_);
  EXPECT_THROW(Contract::Deploy(l, genesis), DeployError);

  // Well-signed but invalid ciphertext.
  l = MakeListing();
  l.ct.response.value = l.ct.response.value % (group_.q() - 1) + 1;
  l.sig = SchnorrSign(group_, seller_.sk.x1, ListingMessage(group_, l.ct, l.goods_hash), rng_);
  EXPECT_THROW(Contract::Deploy(l, genesis), DeployError);
}

TEST_F(ContractTest, ListingSerializationRoundTrip) {
  Listing l = MakeListing();
  Bytes wire = SerializeListing(l);
  Listing back = ParseListing(wire);
  EXPECT_EQ(SerializeListing(back), wire);
  EXPECT_EQ(back.params, l.params);
  EXPECT_EQ(back.ct, l.ct);
  EXPECT_EQ(back.sig, l.sig);
  wire.pop_back();
  EXPECT_THROW(ParseListing(wire), DecodeError);
}

TEST_F(ContractTest, FreshRequestEscrows) {
  Contract c = Fresh();
  upre::KeyPair buyer = NewBuyer();
  EXPECT_EQ(c.SubmitRequest("alice", RequestFor(buyer), kPrice), Status::kOk);
  EXPECT_EQ(c.state().phase, Phase::kAwaitingReKey);
  EXPECT_EQ(c.state().escrowed(), kPrice);
  EXPECT_EQ(c.state().balance("alice"), 900);
  EXPECT_TRUE(c.state().in_request_list(buyer.pk.pk1));
  EXPECT_EQ(c.state().order->deadline, kTimeout);
  EXPECT_EQ(c.state().total_value(), 2000);
}

TEST_F(ContractTest, RepeatedRequesterKeyIsRefunded) {
  Contract c = Fresh();
  upre::KeyPair buyer = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(buyer), kPrice), Status::kOk);
  ASSERT_EQ(c.SubmitReKey(HonestReKey(c)), Status::kOk);
  auto before = c.state().balances;
  // Same pk_j1 again, even from another account and with a fresh h.
  EXPECT_EQ(c.SubmitRequest("bob", RequestFor(buyer), kPrice), Status::kRequestRejected);
  EXPECT_EQ(c.state().balances, before);
  EXPECT_EQ(c.state().escrowed(), 0);
  EXPECT_EQ(c.state().phase, Phase::kCompleted);
  EXPECT_EQ(c.state().request_list.size(), 1u);
  EXPECT_EQ(c.state().orders.back().refunded, kPrice);
  EXPECT_EQ(c.state().orders.back().outcome, Phase::kRefunded);
  EXPECT_EQ(Names(c).back(), "RequestRejected");
}

TEST_F(ContractTest, PaymentMustMatchPrice) {
  Contract c = Fresh();
  std::size_t events = c.events().size();
  EXPECT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice - 1), Status::kWrongPayment);
  EXPECT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice + 1), Status::kWrongPayment);
  EXPECT_EQ(c.SubmitRequest("carol", RequestFor(NewBuyer()), kPrice), Status::kInsufficientFunds);
  EXPECT_EQ(c.events().size(), events);
  EXPECT_EQ(c.state().phase, Phase::kListed);
  EXPECT_TRUE(c.state().request_list.empty());
}

TEST_F(ContractTest, OneOrderAtATime) {
  Contract c = Fresh();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice), Status::kOk);
  EXPECT_EQ(c.SubmitRequest("bob", RequestFor(NewBuyer()), kPrice), Status::kOrderActive);
  EXPECT_EQ(c.state().balance("bob"), 1000);
}

TEST_F(ContractTest, HonestReKeyCompletes) {
  Contract c = Fresh();
  upre::KeyPair buyer = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(buyer), kPrice), Status::kOk);
  EXPECT_EQ(c.SubmitReKey(HonestReKey(c)), Status::kOk);
  EXPECT_EQ(c.state().phase, Phase::kCompleted);
  EXPECT_EQ(c.state().balance("seller"), kPrice);
  EXPECT_EQ(c.state().escrowed(), 0);
  EXPECT_EQ(Names(c), (std::vector<std::string>{"Deployed", "RequestAccepted", "ReKeyAccepted", "Completed"}));
  auto m = upre::DecryptTransformed(group_, buyer.sk, seller_.pk, c.state().transformed.at("alice"));
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(goods::DecodeKey(m.value()), key_);
  EXPECT_FALSE(c.state().arbitrable());
  upre::ReKey stale = upre::ReKeyGen(group_, seller_.sk, RequestFor(NewBuyer()), c.state().listing.ct.masked).value();
  EXPECT_EQ(c.SubmitReKey(stale), Status::kWrongPhase);
}

TEST_F(ContractTest, PerturbedReKeyRejectedEscrowKept) {
  Contract c = Fresh();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice), Status::kOk);
  upre::ReKey rk = HonestReKey(c);
  upre::ReKey bad = rk;
  bad.key.value = bad.key.value % (group_.q() - 1) + 1;
  EXPECT_EQ(c.SubmitReKey(bad), Status::kReKeyInvalid);
  EXPECT_EQ(c.state().phase, Phase::kAwaitingReKey);
  EXPECT_EQ(c.state().escrowed(), kPrice);
  EXPECT_EQ(c.state().balance("seller"), 0);
  EXPECT_TRUE(c.state().transformed.empty());
  EXPECT_TRUE(c.state().arbitrable());
  // A key that verifies but carries someone else's phi is refused too.
  upre::ReKey swapped = rk;
  swapped.blinded = (swapped.blinded + 1) % group_.p();
  EXPECT_EQ(c.SubmitReKey(swapped), Status::kReKeyInvalid);
  EXPECT_TRUE(c.state().transformed.empty());
}

TEST_F(ContractTest, DeadlineAndTicks) {
  Contract c = Fresh();
  c.Advance(0);
  EXPECT_EQ(c.events().size(), 1u);
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice), Status::kOk);
  upre::ReKey rk = HonestReKey(c);
  c.Advance(kTimeout - 1);
  EXPECT_FALSE(c.state().arbitrable());
  c.Advance(1);
  EXPECT_TRUE(c.state().arbitrable());
  EXPECT_EQ(Names(c).back(), "DeadlinePassed");
  EXPECT_EQ(c.SubmitReKey(rk), Status::kExpired);
  EXPECT_EQ(c.state().escrowed(), kPrice);
}

TEST_F(ContractTest, TicksAfterCompletionOnlyMoveClock) {
  Contract c = Fresh();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice), Status::kOk);
  ASSERT_EQ(c.SubmitReKey(HonestReKey(c)), Status::kOk);
  auto balances = c.state().balances;
  c.Advance(5 * kTimeout);
  EXPECT_EQ(c.state().phase, Phase::kCompleted);
  EXPECT_EQ(c.state().balances, balances);
  EXPECT_EQ(c.state().clock, 5 * kTimeout);
  EXPECT_FALSE(c.state().arbitrable());
}

TEST_F(ContractTest, ArbitrationMalformedRequestBlamesBuyer) {
  Contract c = Fresh();
  upre::KeyPair buyer = NewBuyer();
  upre::Request r = RequestFor(buyer);
  r.blinded = rng_.Uniform(1, group_.p() - 1);
  ASSERT_EQ(c.SubmitRequest("alice", r, kPrice), Status::kOk);
  EXPECT_FALSE(upre::ReKeyGen(group_, seller_.sk, r, c.state().listing.ct.masked).ok());
  c.Advance(kTimeout);
  ArbitrationOutcome out = c.ApplyArbitration("alice", buyer.sk);
  ASSERT_EQ(out.status, Status::kOk);
  EXPECT_EQ(out.verdict->at_fault, Party::kBuyer);
  EXPECT_TRUE(out.verdict->refund_issued);
  EXPECT_EQ(c.state().phase, Phase::kArbitratedBuyerFault);
  EXPECT_EQ(c.state().balance("alice"), 1000);
  EXPECT_EQ(c.state().balance("seller"), 0);
}

// phi chosen so that the unblinded value is h + q: g^(h+q) = g2, but an
// honest seller refuses it, so the buyer must not win arbitration with it.
TEST_F(ContractTest, ArbitrationShiftedBlindingBlamesBuyer) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    upre::KeyPair buyer = NewBuyer();
    upre::Request r = RequestFor(buyer);
    mpz_class shared = ModExp(seller_.pk.pk1.value, buyer.sk.x1.value, group_.p());
    mpz_class h = r.blinded * group_.InverseModP(shared) % group_.p();
    if (h + group_.q() >= group_.p()) continue;
    r.blinded = (h + group_.q()) * shared % group_.p();
    Contract c = Fresh();
    ASSERT_EQ(c.SubmitRequest("alice", r, kPrice), Status::kOk);
    EXPECT_FALSE(upre::ReKeyGen(group_, seller_.sk, r, c.state().listing.ct.masked).ok());
    c.Advance(kTimeout);
    ArbitrationOutcome out = c.ApplyArbitration("alice", buyer.sk);
    ASSERT_EQ(out.status, Status::kOk);
    EXPECT_EQ(out.verdict->at_fault, Party::kBuyer);
    return;
  }
  FAIL() << "no shiftable h found";
}

TEST_F(ContractTest, ArbitrationTimeoutBlamesSeller) {
  Contract c = Fresh();
  upre::KeyPair buyer = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(buyer), kPrice), Status::kOk);
  EXPECT_EQ(c.ApplyArbitration("alice", buyer.sk).status, Status::kNotEligible);
  c.Advance(kTimeout);
  EXPECT_EQ(c.ApplyArbitration("bob", buyer.sk).status, Status::kUnauthorized);
  ArbitrationOutcome out = c.ApplyArbitration("alice", buyer.sk);
  ASSERT_EQ(out.status, Status::kOk);
  EXPECT_EQ(out.verdict, (Verdict{Party::kSeller, true}));
  EXPECT_EQ(c.state().phase, Phase::kArbitratedSellerFault);
  EXPECT_EQ(c.state().balance("alice"), 1000);
  EXPECT_EQ(c.state().orders.back().refunded, kPrice);
  EXPECT_EQ(c.ApplyArbitration("alice", buyer.sk).status, Status::kNotEligible);
}

TEST_F(ContractTest, ArbitrationAfterInvalidReKeyBeforeDeadline) {
  Contract c = Fresh();
  upre::KeyPair buyer = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(buyer), kPrice), Status::kOk);
  upre::ReKey bad = HonestReKey(c);
  bad.key.value = bad.key.value % (group_.q() - 1) + 1;
  ASSERT_EQ(c.SubmitReKey(bad), Status::kReKeyInvalid);
  ArbitrationOutcome out = c.ApplyArbitration("alice", buyer.sk);
  ASSERT_EQ(out.status, Status::kOk);
  EXPECT_EQ(out.verdict->at_fault, Party::kSeller);
}

TEST_F(ContractTest, WrongDisclosedKeyBlamesBuyer) {
  Contract c = Fresh();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(NewBuyer()), kPrice), Status::kOk);
  c.Advance(kTimeout);
  ArbitrationOutcome out = c.ApplyArbitration("alice", NewBuyer().sk);
  ASSERT_EQ(out.status, Status::kOk);
  EXPECT_EQ(out.verdict->at_fault, Party::kBuyer);
}

TEST_F(ContractTest, RepeatableSale) {
  Contract c = Fresh();
  upre::KeyPair a = NewBuyer(), b = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(a), kPrice), Status::kOk);
  ASSERT_EQ(c.SubmitReKey(HonestReKey(c)), Status::kOk);
  ASSERT_EQ(c.SubmitRequest("bob", RequestFor(b), kPrice), Status::kOk);
  ASSERT_EQ(c.SubmitReKey(HonestReKey(c)), Status::kOk);
  EXPECT_EQ(c.state().balance("seller"), 2 * kPrice);
  EXPECT_EQ(c.state().transformed.size(), 2u);
  for (const auto& [account, kp] : {std::pair{"alice", a}, std::pair{"bob", b}}) {
    auto m = upre::DecryptTransformed(group_, kp.sk, seller_.pk, c.state().transformed.at(account));
    ASSERT_TRUE(m.ok());
    EXPECT_EQ(goods::DecodeKey(m.value()), key_);
  }
}

// A key issued for one listing does not open another listing by the same
// seller key.
TEST_F(ContractTest, ReKeyDoesNotCarryAcrossListings) {
  Contract first = Fresh();
  Contract second = Fresh();
  upre::KeyPair buyer = NewBuyer();
  upre::Request r = RequestFor(buyer);
  ASSERT_EQ(first.SubmitRequest("alice", r, kPrice), Status::kOk);
  ASSERT_EQ(second.SubmitRequest("alice", r, kPrice), Status::kOk);
  upre::ReKey rk1 = HonestReKey(first);
  EXPECT_EQ(second.SubmitReKey(rk1), Status::kReKeyInvalid);
  EXPECT_TRUE(second.state().transformed.empty());
  EXPECT_EQ(second.state().balance("seller"), 0);
}

TEST_F(ContractTest, ReplayReproducesStateAndDetectsTampering) {
  Contract c = Fresh();
  upre::KeyPair a = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("alice", RequestFor(a), kPrice), Status::kOk);
  c.Advance(3);
  ASSERT_EQ(c.SubmitReKey(HonestReKey(c)), Status::kOk);
  ASSERT_EQ(c.SubmitRequest("bob", RequestFor(a), kPrice), Status::kRequestRejected);
  upre::KeyPair b = NewBuyer();
  ASSERT_EQ(c.SubmitRequest("bob", RequestFor(b), kPrice), Status::kOk);
  c.Advance(kTimeout);
  ASSERT_EQ(c.ApplyArbitration("bob", b.sk).status, Status::kOk);

  std::string text = FormatEventLog(c.events());
  EXPECT_EQ(ParseEventLog(text), c.events());
  Contract replayed = Contract::Replay(ParseEventLog(text));
  EXPECT_EQ(replayed.events(), c.events());
  EXPECT_EQ(replayed.state().balances, c.state().balances);
  EXPECT_EQ(replayed.state().phase, c.state().phase);
  EXPECT_EQ(replayed.state().clock, c.state().clock);
  EXPECT_EQ(replayed.state().request_list, c.state().request_list);
  EXPECT_EQ(replayed.state().transformed, c.state().transformed);

  // Dropping, reordering or editing events is caught.
  std::vector<Event> log = c.events();
  std::vector<Event> dropped = log;
  dropped.erase(dropped.begin() + 2);
  EXPECT_THROW(Contract::Replay(dropped), ReplayError);
  std::vector<Event> edited = log;
  edited[3].payload.back() ^= 1;
  EXPECT_THROW(Contract::Replay(edited), ReplayError);
  std::vector<Event> retimed = log;
  retimed[1].tick += 1;
  EXPECT_THROW(Contract::Replay(retimed), ReplayError);
  std::vector<Event> forged = log;
  forged.push_back({forged.back().tick, "Completed", {}});
  EXPECT_THROW(Contract::Replay(forged), ReplayError);
  EXPECT_THROW(Contract::Replay({}), ReplayError);
  EXPECT_THROW(ParseEventLog("0 Deployed zz\n"), std::exception);
}

// Random operation sequences against a balance model. Checked after every
// step: conservation, the model's balances, request-list monotonicity, and
// that CT_j exists only for buyers whose re-key was accepted.
TEST_F(ContractTest, RandomSequencesKeepInvariants) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    DeterministicRng ops(seed, "ops");
    Contract c = Fresh();
    std::map<AccountId, Amount> model = c.state().balances;
    const Amount total = c.state().total_value();
    std::vector<upre::KeyPair> keys;
    std::map<AccountId, upre::KeyPair> active_key;
    std::vector<GroupElement> previous_list;
    std::set<AccountId> accepted_for;
    const AccountId accounts[] = {"alice", "bob", "carol"};

    for (int step = 0; step < 30; ++step) {
      const AccountId& who = accounts[ops.NextU64() % 3];
      switch (ops.NextU64() % 6) {
        case 0:
        case 1: {
          bool reuse = !keys.empty() && ops.NextU64() % 3 == 0;
          upre::KeyPair kp = reuse ? keys[ops.NextU64() % keys.size()] : NewBuyer();
          if (!reuse) keys.push_back(kp);
          upre::Request r = RequestFor(kp);
          if (ops.NextU64() % 4 == 0) r.blinded = ops.Uniform(1, group_.p() - 1);
          Amount pay = ops.NextU64() % 5 == 0 ? kPrice + 1 : kPrice;
          bool seen = c.state().in_request_list(kp.pk.pk1);
          Status st = c.SubmitRequest(who, r, pay);
          if (st == Status::kOk) {
            EXPECT_FALSE(seen);
            model[who] -= kPrice;
            active_key[who] = kp;
          } else if (st == Status::kRequestRejected) {
            EXPECT_TRUE(seen);
          }
          break;
        }
        case 2: {
          if (!c.state().order) break;
          auto rk = upre::ReKeyGen(group_, seller_.sk, c.state().order->request,
                                   c.state().listing.ct.masked);
          if (!rk.ok()) break;
          upre::ReKey k = rk.value();
          if (ops.NextU64() % 3 == 0) k.key.value = k.key.value % (group_.q() - 1) + 1;
          AccountId buyer = c.state().order->buyer;
          if (c.SubmitReKey(k) == Status::kOk) {
            model["seller"] += kPrice;
            accepted_for.insert(buyer);
          }
          break;
        }
        case 3:
          c.Advance(ops.NextU64() % 7);
          break;
        case 4: {
          if (!c.state().order) break;
          AccountId buyer = c.state().order->buyer;
          AccountId caller = ops.NextU64() % 4 == 0 ? who : buyer;
          ArbitrationOutcome out = c.ApplyArbitration(caller, active_key[buyer].sk);
          if (out.status == Status::kOk) model[buyer] += kPrice;
          break;
        }
        default:
          c.Advance(kTimeout);
          break;
      }
      const ContractState& s = c.state();
      ASSERT_EQ(s.total_value(), total) << "seed " << seed << " step " << step;
      for (const auto& [acct, amount] : s.balances) ASSERT_EQ(model[acct], amount) << acct;
      ASSERT_GE(s.request_list.size(), previous_list.size());
      ASSERT_TRUE(std::equal(previous_list.begin(), previous_list.end(), s.request_list.begin()));
      std::set<mpz_class> distinct;
      for (const auto& e : s.request_list) distinct.insert(e.value);
      ASSERT_EQ(distinct.size(), s.request_list.size());
      previous_list = s.request_list;
      for (const auto& [acct, ct] : s.transformed) ASSERT_TRUE(accepted_for.count(acct)) << acct;
      for (std::size_t i = 0; i < s.log.size(); ++i) {
        if (s.log[i].name == "Completed") ASSERT_EQ(s.log[i - 1].name, "ReKeyAccepted");
      }
    }
    Contract replayed = Contract::Replay(c.events());
    EXPECT_EQ(replayed.state().balances, c.state().balances);
  }
}

TEST_F(ContractTest, SameInputsSameLog) {
  auto run = [&] {
    DeterministicRng rng(5, "determinism");
    upre::KeyPair seller = upre::KeyGen(group_, rng);
    goods::ContentKey key;
    rng.Fill(key.bytes);
    Contract c = Contract::Deploy(PrepareListing(group_, seller, hash_, key, kPrice, "seller", rng),
                                  {{{"alice", 500}}, kTimeout});
    upre::KeyPair buyer = upre::KeyGen(group_, rng);
    c.SubmitRequest("alice", upre::MakeRequest(group_, buyer, seller.pk, rng), kPrice);
    c.Advance(2);
    c.SubmitReKey(upre::ReKeyGen(group_, seller.sk, c.state().order->request, c.state().listing.ct.masked)
                      .value());
    return FormatEventLog(c.events());
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace fairtrade::contract
