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

#ifndef FAIRTRADE_BYTES_H_
#define FAIRTRADE_BYTES_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairtrade {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Raised when a serialized record cannot be parsed.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ToHex(ByteView bytes);
Bytes FromHex(std::string_view hex);

Bytes ToBytes(std::string_view s);

// Fixed-width big-endian encoding. Throws std::invalid_argument if `value`
// is negative or does not fit in `width` bytes.
Bytes EncodeFixed(const mpz_class& value, std::size_t width);
mpz_class DecodeUnsigned(ByteView bytes);

void AppendU32(Bytes& out, std::uint32_t v);
void AppendU64(Bytes& out, std::uint64_t v);

// A string of exactly `bit_length()` bits stored MSB-first; bits past the end
// of the last partial byte are always zero.
class BitString {
 public:
  BitString() = default;
  BitString(Bytes bytes, std::size_t bit_length);

  static BitString Zeros(std::size_t bit_length);

  std::size_t bit_length() const { return bits_; }
  const Bytes& bytes() const { return bytes_; }

  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool v);
  void flip_bit(std::size_t i) { set_bit(i, !bit(i)); }

  BitString Concat(const BitString& other) const;
  BitString Slice(std::size_t start, std::size_t length) const;
  // Lengths must match.
  BitString Xor(const BitString& other) const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  Bytes bytes_;
  std::size_t bits_ = 0;
};

// Sequence of length-prefixed fields (4-byte big-endian length, then bytes).
class FieldWriter {
 public:
  FieldWriter& Add(ByteView field);
  FieldWriter& Add(std::string_view field);
  FieldWriter& AddU64(std::uint64_t v);
  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

class FieldReader {
 public:
  explicit FieldReader(ByteView data) : data_(data) {}
  Bytes Next();
  std::string NextString();
  std::uint64_t NextU64();
  bool done() const { return pos_ == data_.size(); }
  void ExpectDone() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace fairtrade

#endif  // FAIRTRADE_BYTES_H_
