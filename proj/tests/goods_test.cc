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

#include "fairtrade/goods.h"

#include <gtest/gtest.h>

#include "fairtrade/digest.h"
#include "fairtrade/rng.h"

namespace fairtrade::goods {
namespace {

TEST(GoodsTest, RoundTripAcrossSizes) {
  DeterministicRng rng(1);
  for (std::size_t n : {std::size_t{1}, std::size_t{15}, std::size_t{16}, std::size_t{17},
                        std::size_t{4096}, std::size_t{2} << 20, std::size_t{16} << 20}) {
    Bytes goods = rng.RandomBytes(n);
    WrappedGoods w = WrapGoods(goods, rng);
    EXPECT_EQ(w.sealed.body.size(), n);
    auto out = UnwrapGoods(w.sealed, w.key);
    ASSERT_TRUE(out.has_value()) << n;
    EXPECT_EQ(Sha256(*out), Sha256(goods)) << n;
  }
}

TEST(GoodsTest, EmptyInputRejected) {
  DeterministicRng rng(2);
  EXPECT_THROW(WrapGoods(Bytes{}, rng), std::invalid_argument);
}

TEST(GoodsTest, FreshKeyAndNoncePerWrap) {
  DeterministicRng rng(3);
  Bytes goods = rng.RandomBytes(64);
  WrappedGoods a = WrapGoods(goods, rng);
  WrappedGoods b = WrapGoods(goods, rng);
  EXPECT_NE(a.key, b.key);
  EXPECT_NE(a.sealed.nonce, b.sealed.nonce);
  EXPECT_NE(a.sealed.body, b.sealed.body);
}

// Every single-bit change anywhere in the wire form is detected.
TEST(GoodsTest, EveryBitFlipDetected) {
  DeterministicRng rng(4);
  WrappedGoods w = WrapGoods(rng.RandomBytes(64), rng);
  Bytes wire = w.sealed.Serialize();
  ASSERT_EQ(wire.size(), kNonceBytes + kTagBytes + 64);
  for (std::size_t bit = 0; bit < wire.size() * 8; ++bit) {
    Bytes bad = wire;
    bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    ASSERT_FALSE(UnwrapGoods(SealedGoods::Parse(bad), w.key).has_value()) << bit;
  }
}

TEST(GoodsTest, TruncationAndWrongKeyDetected) {
  DeterministicRng rng(5);
  WrappedGoods w = WrapGoods(rng.RandomBytes(100), rng);
  SealedGoods cut = w.sealed;
  cut.body.pop_back();
  EXPECT_FALSE(UnwrapGoods(cut, w.key).has_value());
  SealedGoods grown = w.sealed;
  grown.body.push_back(0);
  EXPECT_FALSE(UnwrapGoods(grown, w.key).has_value());
  ContentKey other = w.key;
  other.bytes[31] ^= 1;
  EXPECT_FALSE(UnwrapGoods(w.sealed, other).has_value());
}

TEST(GoodsTest, ParseSerialize) {
  DeterministicRng rng(6);
  WrappedGoods w = WrapGoods(rng.RandomBytes(10), rng);
  EXPECT_EQ(SealedGoods::Parse(w.sealed.Serialize()), w.sealed);
  EXPECT_THROW(SealedGoods::Parse(Bytes(kNonceBytes + kTagBytes - 1, 0)), DecodeError);
}

TEST(KeyEncodingTest, ExactWidth) {
  DeterministicRng rng(7);
  ContentKey key;
  rng.Fill(key.bytes);
  BitString m = EncodeKey(key, 256);
  EXPECT_EQ(m.bit_length(), 256u);
  EXPECT_TRUE(std::equal(key.bytes.begin(), key.bytes.end(), m.bytes().begin()));
  EXPECT_EQ(DecodeKey(m), key);
}

TEST(KeyEncodingTest, PaddedWidth) {
  DeterministicRng rng(8);
  for (int i = 0; i < 100; ++i) {
    ContentKey key;
    rng.Fill(key.bytes);
    BitString m = EncodeKey(key, 512);
    ASSERT_EQ(m.bit_length(), 512u);
    for (std::size_t b = 256; b < 512; ++b) ASSERT_FALSE(m.bit(b));
    ASSERT_EQ(DecodeKey(m), key);
    // Unaligned l0 works too.
    ASSERT_EQ(DecodeKey(EncodeKey(key, 300)), key);
  }
}

TEST(KeyEncodingTest, RejectsShortOrDirty) {
  ContentKey key{};
  EXPECT_THROW(EncodeKey(key, 128), std::invalid_argument);
  EXPECT_THROW(EncodeKey(key, 255), std::invalid_argument);
  EXPECT_THROW(DecodeKey(BitString::Zeros(128)), std::invalid_argument);
  BitString dirty = EncodeKey(key, 512);
  dirty.flip_bit(400);
  EXPECT_THROW(DecodeKey(dirty), std::invalid_argument);
}

TEST(KeyEncodingTest, FromHex) {
  ContentKey key = ContentKeyFromHex(std::string(64, 'a'));
  for (auto b : key.bytes) EXPECT_EQ(b, 0xaa);
  EXPECT_THROW(ContentKeyFromHex("abcd"), std::exception);
}

}  // namespace
}  // namespace fairtrade::goods
