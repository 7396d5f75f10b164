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

#ifndef FAIRTRADE_SCHNORR_H_
#define FAIRTRADE_SCHNORR_H_

#include "fairtrade/bytes.h"
#include "fairtrade/group.h"
#include "fairtrade/rng.h"

namespace fairtrade {

// Schnorr signature (e, s) over the parameter group, carrying the signer's
// public key y = g^x. Verification recomputes R = g^s * y^-e and checks
// e = H(R, y, msg).
struct SchnorrSignature {
  Scalar challenge;
  Scalar response;
  GroupElement signer;

  friend bool operator==(const SchnorrSignature&, const SchnorrSignature&) = default;
};

SchnorrSignature SchnorrSign(const Group& group, const Scalar& signing_key, ByteView message,
                             Rng& rng);

bool SchnorrVerify(const Group& group, const SchnorrSignature& sig, ByteView message);

// enc(challenge) || enc(response) || enc(signer).
Bytes EncodeSignature(const Group& group, const SchnorrSignature& sig);
SchnorrSignature DecodeSignature(const Group& group, ByteView bytes);

}  // namespace fairtrade

#endif  // FAIRTRADE_SCHNORR_H_
