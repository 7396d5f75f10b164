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

// Unidirectional passive proxy re-encryption over a Schnorr group.
//
// The delegator (seller) encrypts under its own secret key; a delegatee
// (buyer) asks for the decryption right with a Request; the delegator answers
// with a re-encryption key that anyone can check against the ciphertext
// (VerifyReKey) before a proxy transforms the ciphertext for the delegatee.
// The re-encryption key is bound to one ciphertext through F, so it is
// useless against any other ciphertext under the same delegator key.
//
// Every exponentiation goes through Group::Pow. Per-call counts:
//   Encrypt 4, MakeRequest 2, ReKeyGen 2, VerifyReKey 1, ReEncrypt 4,
//   DecryptOriginal 4, DecryptTransformed 3.

#ifndef FAIRTRADE_UPRE_H_
#define FAIRTRADE_UPRE_H_

#include <gmpxx.h>

#include "fairtrade/bytes.h"
#include "fairtrade/group.h"
#include "fairtrade/result.h"
#include "fairtrade/rng.h"

namespace fairtrade::upre {

struct PrivateKey {
  Scalar x1;
  Scalar x2;
  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

struct PublicKey {
  GroupElement pk1;  // g^x1
  GroupElement pk2;  // g^x2
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  PrivateKey sk;
};

// (D, E, F, V, s) with V^s = D * E^H3(D,E,F).
struct OriginalCiphertext {
  GroupElement commitment;   // D = V^u
  GroupElement carrier;      // E = V^r
  BitString masked;          // F = H2(g^r) xor (m || w)
  GroupElement base;         // V = g^H3[(x1 + F) x2]
  Scalar response;           // s = u + r * H3(D, E, F) mod q
  friend bool operator==(const OriginalCiphertext&, const OriginalCiphertext&) = default;
};

// (phi, g2, pk_j1): phi = h * pk_i1^x_j1 mod p hides h, g2 = g^h commits to it.
struct Request {
  mpz_class blinded;         // phi
  GroupElement commitment;   // g2
  GroupElement requester;    // pk_j1
  friend bool operator==(const Request& a, const Request& b) {
    return a.blinded == b.blinded && a.commitment == b.commitment && a.requester == b.requester;
  }
};

struct ReKey {
  Scalar key;        // rk = h / H3[(x1 + F) x2] mod q
  mpz_class blinded; // phi, forwarded into the transformed ciphertext
  friend bool operator==(const ReKey& a, const ReKey& b) {
    return a.key == b.key && a.blinded == b.blinded;
  }
};

// (E', F, phi, g2) with E' = E^rk.
struct TransformedCiphertext {
  GroupElement carrier;      // E'
  BitString masked;          // F
  mpz_class blinded;         // phi
  GroupElement commitment;   // g2
  friend bool operator==(const TransformedCiphertext& a, const TransformedCiphertext& b) {
    return a.carrier == b.carrier && a.masked == b.masked && a.blinded == b.blinded &&
           a.commitment == b.commitment;
  }
};

KeyPair KeyGen(const Group& group, Rng& rng);

// Throws std::invalid_argument unless m has exactly l0 bits.
OriginalCiphertext Encrypt(const Group& group, const PrivateKey& sk, const BitString& m, Rng& rng);

// pk_j1 is copied from the requester's key pair, not recomputed.
Request MakeRequest(const Group& group, const KeyPair& requester, const PublicKey& delegator_pk,
                    Rng& rng);

// `masked` is F of the ciphertext the key is meant for. kMalformedRequest if
// the recovered h is out of range or does not match g2.
Result<ReKey> ReKeyGen(const Group& group, const PrivateKey& delegator_sk, const Request& request,
                       const BitString& masked);

bool VerifyReKey(const Group& group, const Scalar& rk, const GroupElement& base,
                 const GroupElement& commitment);

// Re-checks V^rk = g2 (kInvalidReKey) and the ciphertext validity equation
// (kInvalidCiphertext) before computing E' = E^rk.
Result<TransformedCiphertext> ReEncrypt(const Group& group, const OriginalCiphertext& ct,
                                        const ReKey& rk, const GroupElement& commitment);

Result<BitString> DecryptOriginal(const Group& group, const PrivateKey& sk,
                                  const OriginalCiphertext& ct);

Result<BitString> DecryptTransformed(const Group& group, const PrivateKey& requester_sk,
                                     const PublicKey& delegator_pk,
                                     const TransformedCiphertext& ct);

// H3 of the canonical encoding of ((x1 + int(F)) * x2 mod q).
Scalar KeyBindingExponent(const GroupParams& params, const PrivateKey& sk, const BitString& masked);

// True iff V^s = D * E^H3(D, E, F). Two counted exponentiations.
bool CiphertextWellFormed(const Group& group, const OriginalCiphertext& ct);

// Byte layouts (bit-exact; widths from GroupParams):
//   OriginalCiphertext    enc(D) || enc(E) || F || enc(V) || enc(s)
//   TransformedCiphertext enc(E') || F || enc(phi) || enc(g2)
//   Request               enc(phi) || enc(g2) || enc(pk_j1)
//   ReKey                 enc(rk) || enc(phi)
//   PublicKey             enc(pk1) || enc(pk2)
//   PrivateKey            enc(x1) || enc(x2)
Bytes Serialize(const Group& group, const OriginalCiphertext& ct);
Bytes Serialize(const Group& group, const TransformedCiphertext& ct);
Bytes Serialize(const Group& group, const Request& r);
Bytes Serialize(const Group& group, const ReKey& rk);
Bytes Serialize(const Group& group, const PublicKey& pk);
Bytes Serialize(const Group& group, const PrivateKey& sk);

// Decoders validate lengths, ranges and subgroup membership; DecodeError on failure.
OriginalCiphertext DecodeOriginal(const Group& group, ByteView bytes);
TransformedCiphertext DecodeTransformed(const Group& group, ByteView bytes);
Request DecodeRequest(const Group& group, ByteView bytes);
ReKey DecodeReKey(const Group& group, ByteView bytes);
PublicKey DecodePublicKey(const Group& group, ByteView bytes);
PrivateKey DecodePrivateKey(const Group& group, ByteView bytes);

}  // namespace fairtrade::upre

#endif  // FAIRTRADE_UPRE_H_
