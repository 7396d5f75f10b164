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

#include "fairtrade/upre.h"

#include <stdexcept>

#include "fairtrade/hash.h"

namespace fairtrade::upre {

namespace {

// Splits m || w back into its two components.
std::pair<BitString, BitString> SplitPadded(const GroupParams& params, const BitString& padded) {
  return {padded.Slice(0, params.l0()), padded.Slice(params.l0(), params.l1())};
}

Scalar ChallengeOf(const Group& group, const GroupElement& d, const GroupElement& e,
                   const BitString& masked) {
  return H3(group.params(), {group.Encode(d), group.Encode(e), masked.bytes()});
}

class Cursor {
 public:
  Cursor(const Group& group, ByteView bytes) : group_(group), bytes_(bytes) {}

  ByteView Take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw DecodeError("record truncated");
    ByteView out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  GroupElement Element() {
    return group_.ToElement(DecodeUnsigned(Take(group_.params().element_bytes())));
  }
  Scalar ScalarField() {
    return group_.ToScalar(DecodeUnsigned(Take(group_.params().scalar_bytes())));
  }
  mpz_class ModP() {
    mpz_class v = DecodeUnsigned(Take(group_.params().element_bytes()));
    if (v < 1 || v >= group_.p()) throw DecodeError("value outside [1, p-1]");
    return v;
  }
  BitString Masked() {
    const auto& params = group_.params();
    ByteView raw = Take(params.padded_message_bytes());
    return BitString(Bytes(raw.begin(), raw.end()), params.l0() + params.l1());
  }
  void Done() const {
    if (pos_ != bytes_.size()) throw DecodeError("record has trailing bytes");
  }

 private:
  const Group& group_;
  ByteView bytes_;
  std::size_t pos_ = 0;
};

void Append(Bytes& out, const Bytes& part) { out.insert(out.end(), part.begin(), part.end()); }

}  // namespace

Scalar KeyBindingExponent(const GroupParams& params, const PrivateKey& sk,
                          const BitString& masked) {
  mpz_class f = DecodeUnsigned(masked.bytes());
  mpz_class t = (sk.x1.value + f) % params.q() * sk.x2.value % params.q();
  return H3(params, {EncodeFixed(t, params.scalar_bytes())});
}

bool CiphertextWellFormed(const Group& group, const OriginalCiphertext& ct) {
  Scalar c = ChallengeOf(group, ct.commitment, ct.carrier, ct.masked);
  mpz_class lhs = group.Pow(ct.base.value, ct.response.value);
  mpz_class rhs = ct.commitment.value * group.Pow(ct.carrier.value, c.value) % group.p();
  return lhs == rhs;
}

KeyPair KeyGen(const Group& group, Rng& rng) {
  PrivateKey sk{group.RandomScalar(rng), group.RandomScalar(rng)};
  PublicKey pk{group.GPow(sk.x1.value), group.GPow(sk.x2.value)};
  return {pk, sk};
}

OriginalCiphertext Encrypt(const Group& group, const PrivateKey& sk, const BitString& m,
                           Rng& rng) {
  const GroupParams& params = group.params();
  if (m.bit_length() != params.l0()) throw std::invalid_argument("message must be l0 bits");

  BitString w = rng.RandomBitString(params.l1());
  Scalar r = H1(params, m, w);
  BitString masked = H2(params, group.GPow(r.value)).Xor(m.Concat(w));
  GroupElement base = group.GPow(KeyBindingExponent(params, sk, masked).value);
  GroupElement carrier{group.Pow(base.value, r.value)};
  for (;;) {
    Scalar u = group.RandomScalar(rng);
    GroupElement commitment{group.Pow(base.value, u.value)};
    Scalar c = ChallengeOf(group, commitment, carrier, masked);
    mpz_class s = (u.value + r.value * c.value) % group.q();
    if (s != 0) return {commitment, carrier, masked, base, {s}};
  }
}

Request MakeRequest(const Group& group, const KeyPair& requester, const PublicKey& delegator_pk,
                    Rng& rng) {
  Scalar h = group.RandomScalar(rng);
  GroupElement commitment = group.GPow(h.value);
  mpz_class shared = group.Pow(delegator_pk.pk1.value, requester.sk.x1.value);
  return {h.value * shared % group.p(), commitment, requester.pk.pk1};
}

Result<ReKey> ReKeyGen(const Group& group, const PrivateKey& delegator_sk, const Request& request,
                       const BitString& masked) {
  if (request.blinded < 1 || request.blinded >= group.p()) return Reject::kMalformedRequest;
  mpz_class shared = group.Pow(request.requester.value, delegator_sk.x1.value);
  mpz_class h = request.blinded * group.InverseModP(shared) % group.p();
  if (!group.InScalarRange(h)) return Reject::kMalformedRequest;
  if (group.Pow(group.params().g(), h) != request.commitment.value) {
    return Reject::kMalformedRequest;
  }
  Scalar binding = KeyBindingExponent(group.params(), delegator_sk, masked);
  return ReKey{{h * group.InverseModQ(binding.value) % group.q()}, request.blinded};
}

bool VerifyReKey(const Group& group, const Scalar& rk, const GroupElement& base,
                 const GroupElement& commitment) {
  return group.Pow(base.value, rk.value) == commitment.value;
}

Result<TransformedCiphertext> ReEncrypt(const Group& group, const OriginalCiphertext& ct,
                                        const ReKey& rk, const GroupElement& commitment) {
  if (!VerifyReKey(group, rk.key, ct.base, commitment)) return Reject::kInvalidReKey;
  if (!CiphertextWellFormed(group, ct)) return Reject::kInvalidCiphertext;
  GroupElement carrier{group.Pow(ct.carrier.value, rk.key.value)};
  return TransformedCiphertext{carrier, ct.masked, rk.blinded, commitment};
}

Result<BitString> DecryptOriginal(const Group& group, const PrivateKey& sk,
                                  const OriginalCiphertext& ct) {
  const GroupParams& params = group.params();
  if (!CiphertextWellFormed(group, ct)) return Reject::kInvalidCiphertext;
  Scalar binding = KeyBindingExponent(params, sk, ct.masked);
  GroupElement g_r{group.Pow(ct.carrier.value, group.InverseModQ(binding.value))};
  auto [m, w] = SplitPadded(params, ct.masked.Xor(H2(params, g_r)));
  if (group.Pow(ct.base.value, H1(params, m, w).value) != ct.carrier.value) {
    return Reject::kDecryptionCheckFailed;
  }
  return m;
}

Result<BitString> DecryptTransformed(const Group& group, const PrivateKey& requester_sk,
                                     const PublicKey& delegator_pk,
                                     const TransformedCiphertext& ct) {
  const GroupParams& params = group.params();
  if (ct.blinded < 1 || ct.blinded >= group.p()) return Reject::kDecryptionCheckFailed;
  mpz_class shared = group.Pow(delegator_pk.pk1.value, requester_sk.x1.value);
  mpz_class h = ct.blinded * group.InverseModP(shared) % group.p();
  if (!group.InScalarRange(h)) return Reject::kDecryptionCheckFailed;
  GroupElement g_r{group.Pow(ct.carrier.value, group.InverseModQ(h))};
  auto [m, w] = SplitPadded(params, ct.masked.Xor(H2(params, g_r)));
  if (group.Pow(ct.commitment.value, H1(params, m, w).value) != ct.carrier.value) {
    return Reject::kDecryptionCheckFailed;
  }
  return m;
}

Bytes Serialize(const Group& group, const OriginalCiphertext& ct) {
  Bytes out = group.Encode(ct.commitment);
  Append(out, group.Encode(ct.carrier));
  Append(out, ct.masked.bytes());
  Append(out, group.Encode(ct.base));
  Append(out, group.Encode(ct.response));
  return out;
}

Bytes Serialize(const Group& group, const TransformedCiphertext& ct) {
  Bytes out = group.Encode(ct.carrier);
  Append(out, ct.masked.bytes());
  Append(out, group.EncodeModP(ct.blinded));
  Append(out, group.Encode(ct.commitment));
  return out;
}

Bytes Serialize(const Group& group, const Request& r) {
  Bytes out = group.EncodeModP(r.blinded);
  Append(out, group.Encode(r.commitment));
  Append(out, group.Encode(r.requester));
  return out;
}

Bytes Serialize(const Group& group, const ReKey& rk) {
  Bytes out = group.Encode(rk.key);
  Append(out, group.EncodeModP(rk.blinded));
  return out;
}

Bytes Serialize(const Group& group, const PublicKey& pk) {
  Bytes out = group.Encode(pk.pk1);
  Append(out, group.Encode(pk.pk2));
  return out;
}

Bytes Serialize(const Group& group, const PrivateKey& sk) {
  Bytes out = group.Encode(sk.x1);
  Append(out, group.Encode(sk.x2));
  return out;
}

OriginalCiphertext DecodeOriginal(const Group& group, ByteView bytes) {
  Cursor c(group, bytes);
  OriginalCiphertext ct;
  ct.commitment = c.Element();
  ct.carrier = c.Element();
  ct.masked = c.Masked();
  ct.base = c.Element();
  ct.response = c.ScalarField();
  c.Done();
  return ct;
}

TransformedCiphertext DecodeTransformed(const Group& group, ByteView bytes) {
  Cursor c(group, bytes);
  TransformedCiphertext ct;
  ct.carrier = c.Element();
  ct.masked = c.Masked();
  ct.blinded = c.ModP();
  ct.commitment = c.Element();
  c.Done();
  return ct;
}

Request DecodeRequest(const Group& group, ByteView bytes) {
  Cursor c(group, bytes);
  Request r;
  r.blinded = c.ModP();
  r.commitment = c.Element();
  r.requester = c.Element();
  c.Done();
  return r;
}

ReKey DecodeReKey(const Group& group, ByteView bytes) {
  Cursor c(group, bytes);
  ReKey rk;
  rk.key = c.ScalarField();
  rk.blinded = c.ModP();
  c.Done();
  return rk;
}

PublicKey DecodePublicKey(const Group& group, ByteView bytes) {
  Cursor c(group, bytes);
  PublicKey pk;
  pk.pk1 = c.Element();
  pk.pk2 = c.Element();
  c.Done();
  return pk;
}

PrivateKey DecodePrivateKey(const Group& group, ByteView bytes) {
  Cursor c(group, bytes);
  PrivateKey sk;
  sk.x1 = c.ScalarField();
  sk.x2 = c.ScalarField();
  c.Done();
  return sk;
}

}  // namespace fairtrade::upre
