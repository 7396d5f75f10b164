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

// Hybrid protection of digital goods: the payload is sealed with
// AES-256-GCM under a fresh content key, and the content key travels as a
// proxy re-encryption plaintext.

#ifndef FAIRTRADE_GOODS_H_
#define FAIRTRADE_GOODS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "fairtrade/bytes.h"
#include "fairtrade/rng.h"

namespace fairtrade::goods {

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kTagBytes = 16;
inline constexpr std::size_t kKeyBits = kKeyBytes * 8;

struct ContentKey {
  std::array<std::uint8_t, kKeyBytes> bytes{};
  friend bool operator==(const ContentKey&, const ContentKey&) = default;
};

// Wire form: nonce (12 bytes) || tag (16 bytes) || body.
struct SealedGoods {
  std::array<std::uint8_t, kNonceBytes> nonce{};
  std::array<std::uint8_t, kTagBytes> tag{};
  Bytes body;

  Bytes Serialize() const;
  // DecodeError if shorter than nonce + tag.
  static SealedGoods Parse(ByteView wire);

  friend bool operator==(const SealedGoods&, const SealedGoods&) = default;
};

struct WrappedGoods {
  ContentKey key;
  SealedGoods sealed;
};

// Throws std::invalid_argument on empty input.
WrappedGoods WrapGoods(ByteView goods, Rng& rng);

// nullopt on a wrong key or any modification of the sealed record.
std::optional<Bytes> UnwrapGoods(const SealedGoods& sealed, const ContentKey& key);

// 256 key bits followed by zero padding up to l0 bits. l0 < 256 throws
// std::invalid_argument.
BitString EncodeKey(const ContentKey& key, std::size_t l0);
// Throws std::invalid_argument if the message is shorter than 256 bits or
// carries nonzero padding.
ContentKey DecodeKey(const BitString& message);

ContentKey ContentKeyFromHex(std::string_view hex);

}  // namespace fairtrade::goods

#endif  // FAIRTRADE_GOODS_H_
