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

#ifndef FAIRTRADE_HASH_H_
#define FAIRTRADE_HASH_H_

#include <cstdint>
#include <initializer_list>

#include "fairtrade/bytes.h"
#include "fairtrade/group.h"

namespace fairtrade {

// Domain-separation tags prefixed to every oracle input.
enum class HashDomain : std::uint8_t {
  kH1 = 0x01,
  kH2 = 0x02,
  kH3 = 0x03,
  kSchnorr = 0x04,
};

// tag || (u32 length || part)*. This is the exact byte string fed to SHAKE256.
Bytes DomainInput(HashDomain domain, std::initializer_list<ByteView> parts);

// Maps the parts into [1, q-1] by rejection sampling lq-bit draws from the
// SHAKE256 stream of DomainInput(domain, parts).
Scalar HashToScalar(const GroupParams& params, HashDomain domain,
                    std::initializer_list<ByteView> parts);

// H1 : {0,1}^l0 x {0,1}^l1 -> Z_q^*. Throws std::invalid_argument if m or w
// has the wrong bit length.
Scalar H1(const GroupParams& params, const BitString& m, const BitString& w);

// H2 : G -> {0,1}^(l0+l1).
BitString H2(const GroupParams& params, const GroupElement& element);

// H3 : {0,1}^* -> Z_q^*. Multi-part inputs are length-prefixed.
Scalar H3(const GroupParams& params, std::initializer_list<ByteView> parts);

}  // namespace fairtrade

#endif  // FAIRTRADE_HASH_H_
