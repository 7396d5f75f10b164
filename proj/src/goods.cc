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

#include <openssl/evp.h>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace fairtrade::goods {

namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx NewCipherCtx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::runtime_error("EVP_CIPHER_CTX_new failed");
  return ctx;
}

}  // namespace

Bytes SealedGoods::Serialize() const {
  Bytes out(nonce.begin(), nonce.end());
  out.insert(out.end(), tag.begin(), tag.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

SealedGoods SealedGoods::Parse(ByteView wire) {
  if (wire.size() < kNonceBytes + kTagBytes) throw DecodeError("sealed goods record too short");
  SealedGoods out;
  std::copy_n(wire.begin(), kNonceBytes, out.nonce.begin());
  std::copy_n(wire.begin() + kNonceBytes, kTagBytes, out.tag.begin());
  out.body.assign(wire.begin() + kNonceBytes + kTagBytes, wire.end());
  return out;
}

WrappedGoods WrapGoods(ByteView goods, Rng& rng) {
  if (goods.empty()) throw std::invalid_argument("goods must be non-empty");
  if (goods.size() > static_cast<std::size_t>(INT32_MAX)) throw std::length_error("goods too large");
  WrappedGoods out;
  rng.Fill(out.key.bytes);
  rng.Fill(out.sealed.nonce);

  CipherCtx ctx = NewCipherCtx();
  out.sealed.body.resize(goods.size());
  int len = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, out.key.bytes.data(),
                         out.sealed.nonce.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.sealed.body.data(), &len, goods.data(),
                        static_cast<int>(goods.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.sealed.body.data() + len, &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes, out.sealed.tag.data()) != 1) {
    throw std::runtime_error("AES-256-GCM encryption failed");
  }
  return out;
}

std::optional<Bytes> UnwrapGoods(const SealedGoods& sealed, const ContentKey& key) {
  if (sealed.body.size() > static_cast<std::size_t>(INT32_MAX)) return std::nullopt;
  CipherCtx ctx = NewCipherCtx();
  Bytes plain(sealed.body.size());
  auto tag = sealed.tag;
  int len = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(),
                         sealed.nonce.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), plain.data(), &len, sealed.body.data(),
                        static_cast<int>(sealed.body.size())) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, tag.data()) != 1) {
    return std::nullopt;
  }
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &len) != 1) return std::nullopt;
  return plain;
}

BitString EncodeKey(const ContentKey& key, std::size_t l0) {
  if (l0 < kKeyBits) throw std::invalid_argument("l0 must be at least 256 bits to carry a content key");
  Bytes raw(key.bytes.begin(), key.bytes.end());
  return BitString(std::move(raw), kKeyBits).Concat(BitString::Zeros(l0 - kKeyBits));
}

ContentKey DecodeKey(const BitString& message) {
  if (message.bit_length() < kKeyBits) throw std::invalid_argument("message shorter than a content key");
  for (std::size_t i = kKeyBits; i < message.bit_length(); ++i) {
    if (message.bit(i)) throw std::invalid_argument("content key padding is not zero");
  }
  ContentKey key;
  std::copy_n(message.bytes().begin(), kKeyBytes, key.bytes.begin());
  return key;
}

ContentKey ContentKeyFromHex(std::string_view hex) {
  Bytes raw = FromHex(hex);
  if (raw.size() != kKeyBytes) throw DecodeError("content key must be 32 bytes");
  ContentKey key;
  std::copy(raw.begin(), raw.end(), key.bytes.begin());
  return key;
}

}  // namespace fairtrade::goods
