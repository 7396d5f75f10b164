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

#include "fairtrade/schnorr.h"

#include "fairtrade/hash.h"

namespace fairtrade {

namespace {

Scalar Challenge(const Group& group, const mpz_class& commitment, const GroupElement& signer,
                 ByteView message) {
  return HashToScalar(group.params(), HashDomain::kSchnorr,
                      {group.EncodeModP(commitment), group.Encode(signer), message});
}

}  // namespace

SchnorrSignature SchnorrSign(const Group& group, const Scalar& signing_key, ByteView message,
                             Rng& rng) {
  if (!group.InScalarRange(signing_key.value)) {
    throw std::invalid_argument("signing key outside [1, q-1]");
  }
  GroupElement signer = group.GPow(signing_key.value);
  for (;;) {
    Scalar nonce = group.RandomScalar(rng);
    mpz_class commitment = group.Pow(group.params().g(), nonce.value);
    Scalar e = Challenge(group, commitment, signer, message);
    mpz_class s = (nonce.value + e.value * signing_key.value) % group.q();
    if (s != 0) return {e, {s}, signer};
  }
}

bool SchnorrVerify(const Group& group, const SchnorrSignature& sig, ByteView message) {
  if (!group.InScalarRange(sig.challenge.value) || !group.InScalarRange(sig.response.value)) {
    return false;
  }
  if (!group.Contains(sig.signer.value)) return false;
  mpz_class gs = group.Pow(group.params().g(), sig.response.value);
  mpz_class y_neg_e = group.Pow(sig.signer.value, group.q() - sig.challenge.value);
  mpz_class commitment = gs * y_neg_e % group.p();
  return Challenge(group, commitment, sig.signer, message) == sig.challenge;
}

Bytes EncodeSignature(const Group& group, const SchnorrSignature& sig) {
  Bytes out = group.Encode(sig.challenge);
  Bytes s = group.Encode(sig.response);
  Bytes y = group.Encode(sig.signer);
  out.insert(out.end(), s.begin(), s.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

SchnorrSignature DecodeSignature(const Group& group, ByteView bytes) {
  const std::size_t sw = group.params().scalar_bytes();
  const std::size_t ew = group.params().element_bytes();
  if (bytes.size() != 2 * sw + ew) throw DecodeError("signature has wrong length");
  return {group.ToScalar(DecodeUnsigned(bytes.subspan(0, sw))),
          group.ToScalar(DecodeUnsigned(bytes.subspan(sw, sw))),
          group.ToElement(DecodeUnsigned(bytes.subspan(2 * sw, ew)))};
}

}  // namespace fairtrade
