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

#include "fairtrade/digest.h"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace fairtrade {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

MdCtx NewCtx(const EVP_MD* md, ByteView data) {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1) {
    throw std::runtime_error("digest initialisation failed");
  }
  return ctx;
}

}  // namespace

Sha256Digest Sha256(ByteView data) {
  MdCtx ctx = NewCtx(EVP_sha256(), data);
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size()) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

Bytes Shake256(ByteView data, std::size_t out_len) {
  Bytes out(out_len);
  if (out_len == 0) return out;
  MdCtx ctx = NewCtx(EVP_shake256(), data);
  if (EVP_DigestFinalXOF(ctx.get(), out.data(), out_len) != 1) {
    throw std::runtime_error("shake256 failed");
  }
  return out;
}

}  // namespace fairtrade
