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

#include <gtest/gtest.h>

#include <filesystem>

#include "fairtrade/digest.h"
#include "test_support.h"

namespace fairtrade::harness {
namespace {

using contract::Party;
using contract::Phase;

class HarnessTest : public ::testing::Test {
 protected:
  HarnessTest() : params_(testing::CachedParams(256, 256, 256)) {
    goods_ = DeterministicRng(3, "goods").RandomBytes(4096);
  }

  Transcript Run(Behavior seller, Behavior buyer, std::uint64_t seed = 1) {
    ScenarioConfig config;
    config.seller = seller;
    config.buyer = buyer;
    config.seed = seed;
    config.timeout = 20;
    return RunScenario(params_, goods_, config);
  }

  std::vector<MessageKind> Kinds(const Transcript& t) {
    std::vector<MessageKind> out;
    for (const Interaction& i : t.interactions) out.push_back(i.kind);
    return out;
  }

  GroupParams params_;
  Bytes goods_;
};

TEST_F(HarnessTest, HonestSaleDelivers) {
  Transcript t = Run(Behavior::kHonest, Behavior::kHonest);
  EXPECT_EQ(t.final_phase, Phase::kCompleted);
  EXPECT_TRUE(t.buyer_recovered_goods);
  EXPECT_FALSE(t.verdict.has_value());
  EXPECT_EQ(t.final_balances.at("seller"), 100);
  EXPECT_EQ(t.final_balances.at("buyer"), 200);
  EXPECT_EQ(t.goods_digest, Sha256(goods_));
  EXPECT_EQ(CountInteractions(t), 7u);
  using K = MessageKind;
  EXPECT_EQ(Kinds(t), (std::vector<K>{K::kStoreUpload, K::kDeploy, K::kRequest, K::kNotify, K::kReKey,
                                       K::kPaymentRelease, K::kCtAvailable, K::kFetchCt,
                                       K::kStoreDownload}));
  AuditReport audit = FairnessAudit(t);
  EXPECT_TRUE(audit.pass);
  EXPECT_EQ(audit.branches, "a");
}

TEST_F(HarnessTest, MalformedRequestIsBuyersFault) {
  Transcript t = Run(Behavior::kHonest, Behavior::kBuyerMalformedRequest);
  EXPECT_EQ(t.final_phase, Phase::kArbitratedBuyerFault);
  ASSERT_TRUE(t.verdict.has_value());
  EXPECT_EQ(t.verdict->at_fault, Party::kBuyer);
  EXPECT_FALSE(t.buyer_recovered_goods);
  EXPECT_EQ(t.final_balances.at("seller"), 0);
  EXPECT_EQ(t.final_balances.at("buyer"), 300);
  AuditReport audit = FairnessAudit(t);
  EXPECT_TRUE(audit.pass);
  EXPECT_EQ(audit.branches, "b");
}

TEST_F(HarnessTest, SellerTimeoutIsSellersFault) {
  Transcript t = Run(Behavior::kSellerTimeout, Behavior::kHonest);
  EXPECT_EQ(t.final_phase, Phase::kArbitratedSellerFault);
  EXPECT_EQ(t.verdict->at_fault, Party::kSeller);
  EXPECT_TRUE(t.verdict->refund_issued);
  EXPECT_EQ(t.final_balances.at("buyer"), 300);
  EXPECT_EQ(CountInteractions(t), 4u);
  EXPECT_EQ(FairnessAudit(t).branches, "b");
}

TEST_F(HarnessTest, InvalidReKeyIsSellersFault) {
  Transcript t = Run(Behavior::kSellerInvalidReKey, Behavior::kHonest);
  EXPECT_EQ(t.final_phase, Phase::kArbitratedSellerFault);
  EXPECT_EQ(t.final_balances.at("seller"), 0);
  EXPECT_TRUE(FairnessAudit(t).pass);
}

TEST_F(HarnessTest, ReplayedKeyTurnedAwayWithRefund) {
  Transcript t = Run(Behavior::kHonest, Behavior::kBuyerReplayedKey);
  ASSERT_EQ(t.orders.size(), 2u);
  EXPECT_EQ(t.orders[1].record.outcome, Phase::kRefunded);
  EXPECT_EQ(t.orders[1].record.refunded, 100);
  EXPECT_EQ(t.final_balances.at("seller"), 100);
  EXPECT_EQ(t.final_balances.at("buyer"), 200);
  // Honest sale plus the second request and its refund.
  EXPECT_EQ(CountInteractions(t), 9u);
  AuditReport audit = FairnessAudit(t);
  EXPECT_TRUE(audit.pass);
  EXPECT_EQ(audit.branches, "ab");
}

TEST_F(HarnessTest, DeploymentAloneCountsOne) {
  Transcript t(params_);
  t.interactions = {{Actor::kSeller, Actor::kStore, MessageKind::kStoreUpload, 0, -1},
                    {Actor::kSeller, Actor::kContract, MessageKind::kDeploy, 0, -1}};
  EXPECT_EQ(CountInteractions(t), 1u);
  // An unanswered notification is not a round trip.
  t.interactions.push_back({Actor::kBuyer, Actor::kContract, MessageKind::kRequest, 0, 0});
  t.interactions.push_back({Actor::kContract, Actor::kSeller, MessageKind::kNotify, 0, 0});
  EXPECT_EQ(CountInteractions(t), 2u);
  t.interactions.push_back({Actor::kSeller, Actor::kContract, MessageKind::kReKey, 0, 0});
  EXPECT_EQ(CountInteractions(t), 4u);
}

// The auditor must notice each way of breaking fairness.
TEST_F(HarnessTest, AuditNegativeControls) {
  Transcript disputed = Run(Behavior::kSellerInvalidReKey, Behavior::kHonest);
  Transcript kept = disputed;
  kept.orders[0].record.seller_received = 100;
  kept.orders[0].record.refunded = 0;
  EXPECT_FALSE(FairnessAudit(kept).pass);

  Transcript honest = Run(Behavior::kHonest, Behavior::kHonest);
  Transcript undelivered = honest;
  undelivered.orders[0].transformed.reset();
  EXPECT_FALSE(FairnessAudit(undelivered).pass);

  Transcript wrong_goods = honest;
  wrong_goods.goods_digest[0] ^= 1;
  EXPECT_FALSE(FairnessAudit(wrong_goods).pass);

  Transcript double_paid = honest;
  double_paid.orders[0].record.refunded = 100;
  EXPECT_FALSE(FairnessAudit(double_paid).pass);

  Transcript leaked = honest;
  leaked.final_balances["seller"] += 1;
  EXPECT_FALSE(FairnessAudit(leaked).pass);

  Transcript broken = honest;
  broken.conservation_violations = 1;
  EXPECT_FALSE(FairnessAudit(broken).pass);
}

TEST_F(HarnessTest, DeterministicPerSeed) {
  for (Behavior s : kSellerBehaviors) {
    for (Behavior b : kBuyerBehaviors) {
      EXPECT_EQ(Run(s, b, 9).Serialize(), Run(s, b, 9).Serialize());
    }
  }
  EXPECT_NE(Run(Behavior::kHonest, Behavior::kHonest, 9).Serialize(),
            Run(Behavior::kHonest, Behavior::kHonest, 10).Serialize());
}

TEST_F(HarnessTest, TranscriptEventsReplay) {
  for (Behavior s : kSellerBehaviors) {
    for (Behavior b : kBuyerBehaviors) {
      Transcript t = Run(s, b, 4);
      contract::Contract c = contract::Contract::Replay(t.events);
      EXPECT_EQ(c.state().phase, t.final_phase);
      EXPECT_EQ(c.state().balances, t.final_balances);
    }
  }
}

TEST_F(HarnessTest, ExpectedOutcomesAcrossMatrix) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    for (Behavior s : kSellerBehaviors) {
      for (Behavior b : kBuyerBehaviors) {
        Transcript t = Run(s, b, seed);
        AuditReport audit = FairnessAudit(t);
        ASSERT_TRUE(audit.pass) << BehaviorName(s) << "/" << BehaviorName(b);
        Phase expected;
        if (b == Behavior::kBuyerMalformedRequest) {
          expected = Phase::kArbitratedBuyerFault;
        } else if (s == Behavior::kHonest) {
          expected = Phase::kCompleted;
        } else {
          expected = Phase::kArbitratedSellerFault;
        }
        EXPECT_EQ(t.final_phase, expected) << BehaviorName(s) << "/" << BehaviorName(b);
        EXPECT_EQ(t.buyer_recovered_goods, expected == Phase::kCompleted);
        EXPECT_EQ(t.conservation_violations, 0u);
      }
    }
  }
}

TEST_F(HarnessTest, UsesGivenStore) {
  InMemoryBlobStore store;
  ScenarioConfig config;
  Transcript t = RunScenario(params_, goods_, config, &store);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ(store.Get(ContentHash::Of(t.sealed_goods)), t.sealed_goods);
}

TEST(StrategyTest, RolesAndNames) {
  EXPECT_THROW(Strategy::Seller(Behavior::kBuyerMalformedRequest), std::invalid_argument);
  EXPECT_THROW(Strategy::Buyer(Behavior::kSellerTimeout), std::invalid_argument);
  EXPECT_NO_THROW(Strategy::Seller(Behavior::kHonest));
  for (Behavior b : {Behavior::kHonest, Behavior::kBuyerMalformedRequest, Behavior::kBuyerReplayedKey,
                     Behavior::kSellerInvalidReKey, Behavior::kSellerTimeout}) {
    EXPECT_EQ(ParseBehavior(BehaviorName(b)), b);
  }
  EXPECT_THROW(ParseBehavior("sneaky"), std::invalid_argument);
}

TEST(ScenarioFileTest, Parses) {
  ScenarioFile f = ParseScenarioFile(
      "# comment\nseller=timeout\nbuyer=honest\nlq=256\nl0=256\nl1=256\nprice=7\nseed=3\ntimeout=5\n");
  EXPECT_EQ(f.config.seller, Behavior::kSellerTimeout);
  EXPECT_EQ(f.lq, 256u);
  EXPECT_EQ(f.config.price, 7);
  EXPECT_EQ(f.config.seed, 3u);
  EXPECT_EQ(f.config.timeout, 5u);
  EXPECT_THROW(ParseScenarioFile("colour=blue\n"), std::invalid_argument);
  EXPECT_THROW(ParseScenarioFile("seller\n"), std::invalid_argument);
  EXPECT_THROW(ParseScenarioFile("buyer=timeout\n"), std::invalid_argument);
}

}  // namespace
}  // namespace fairtrade::harness
