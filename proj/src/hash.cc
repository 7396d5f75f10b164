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

#include "fairtrade/hash.h"

#include <stdexcept>

#include "fairtrade/digest.h"

namespace fairtrade {

Bytes DomainInput(HashDomain domain, std::initializer_list<ByteView> parts) {
  Bytes input{static_cast<std::uint8_t>(domain)};
  for (ByteView part : parts) {
    AppendU32(input, static_cast<std::uint32_t>(part.size()));
    input.insert(input.end(), part.begin(), part.end());
  }
  return input;
}

Scalar HashToScalar(const GroupParams& params, HashDomain domain,
                    std::initializer_list<ByteView> parts) {
  const Bytes input = DomainInput(domain, parts);
  const std::size_t lq = params.lq();
  const std::size_t width = params.scalar_bytes();
  const std::uint8_t top_mask =
      lq % 8 == 0 ? 0xff : static_cast<std::uint8_t>(0xff >> (8 - lq % 8));

  // q >= 2^(lq-1), so each draw is accepted with probability about 1/2 or
  // better. The stream is extended if every draw in it is rejected.
  std::size_t draws = 16;
  std::size_t next = 0;
  for (;;) {
    Bytes stream = Shake256(input, draws * width);
    for (; next < draws; ++next) {
      Bytes draw(stream.begin() + next * width, stream.begin() + (next + 1) * width);
      draw[0] &= top_mask;
      mpz_class v = DecodeUnsigned(draw);
      if (v >= 1 && v < params.q()) return {v};
    }
    draws *= 2;
  }
}

Scalar H1(const GroupParams& params, const BitString& m, const BitString& w) {
  if (m.bit_length() != params.l0()) throw std::invalid_argument("H1: m must be l0 bits");
  if (w.bit_length() != params.l1()) throw std::invalid_argument("H1: w must be l1 bits");
  return HashToScalar(params, HashDomain::kH1, {m.bytes(), w.bytes()});
}

BitString H2(const GroupParams& params, const GroupElement& element) {
  Bytes enc = EncodeFixed(element.value, params.element_bytes());
  Bytes input = DomainInput(HashDomain::kH2, {enc});
  return BitString(Shake256(input, params.padded_message_bytes()), params.l0() + params.l1());
}

Scalar H3(const GroupParams& params, std::initializer_list<ByteView> parts) {
  return HashToScalar(params, HashDomain::kH3, parts);
}

}  // namespace fairtrade
