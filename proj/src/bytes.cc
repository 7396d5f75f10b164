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

#include "fairtrade/bytes.h"

#include <algorithm>

namespace fairtrade {

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string ToHex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = HexValue(hex[2 * i]);
    int lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

Bytes EncodeFixed(const mpz_class& value, std::size_t width) {
  if (sgn(value) < 0) throw std::invalid_argument("negative integer");
  std::size_t needed = (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
  if (sgn(value) == 0) needed = 0;
  if (needed > width) throw std::invalid_argument("integer exceeds encoding width");
  Bytes out(width, 0);
  std::size_t count = 0;
  mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0,
             value.get_mpz_t());
  return out;
}

mpz_class DecodeUnsigned(ByteView bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

void AppendU32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void AppendU64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

BitString::BitString(Bytes bytes, std::size_t bit_length)
    : bytes_(std::move(bytes)), bits_(bit_length) {
  if (bytes_.size() != (bits_ + 7) / 8) {
    throw std::invalid_argument("bit string byte length does not match bit length");
  }
  if (bits_ % 8 != 0 && !bytes_.empty()) {
    std::uint8_t mask = static_cast<std::uint8_t>(0xff >> (bits_ % 8));
    if ((bytes_.back() & mask) != 0) {
      throw std::invalid_argument("bit string has nonzero trailing pad bits");
    }
  }
}

BitString BitString::Zeros(std::size_t bit_length) {
  return BitString(Bytes((bit_length + 7) / 8, 0), bit_length);
}

bool BitString::bit(std::size_t i) const {
  if (i >= bits_) throw std::out_of_range("bit index");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1;
}

void BitString::set_bit(std::size_t i, bool v) {
  if (i >= bits_) throw std::out_of_range("bit index");
  std::uint8_t mask = static_cast<std::uint8_t>(0x80 >> (i % 8));
  if (v) {
    bytes_[i / 8] |= mask;
  } else {
    bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
  }
}

BitString BitString::Concat(const BitString& other) const {
  if (bits_ % 8 == 0) {
    Bytes joined = bytes_;
    joined.insert(joined.end(), other.bytes_.begin(), other.bytes_.end());
    return BitString(std::move(joined), bits_ + other.bits_);
  }
  BitString out = Zeros(bits_ + other.bits_);
  for (std::size_t i = 0; i < bits_; ++i) out.set_bit(i, bit(i));
  for (std::size_t i = 0; i < other.bits_; ++i) out.set_bit(bits_ + i, other.bit(i));
  return out;
}

BitString BitString::Slice(std::size_t start, std::size_t length) const {
  if (start + length > bits_) throw std::out_of_range("bit slice");
  if (start % 8 == 0) {
    Bytes part(bytes_.begin() + start / 8,
               bytes_.begin() + start / 8 + (length + 7) / 8);
    if (length % 8 != 0) {
      part.back() &= static_cast<std::uint8_t>(0xff << (8 - length % 8));
    }
    return BitString(std::move(part), length);
  }
  BitString out = Zeros(length);
  for (std::size_t i = 0; i < length; ++i) out.set_bit(i, bit(start + i));
  return out;
}

BitString BitString::Xor(const BitString& other) const {
  if (bits_ != other.bits_) throw std::invalid_argument("xor of bit strings with different lengths");
  Bytes out(bytes_.size());
  std::transform(bytes_.begin(), bytes_.end(), other.bytes_.begin(), out.begin(),
                 [](std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(a ^ b); });
  return BitString(std::move(out), bits_);
}

FieldWriter& FieldWriter::Add(ByteView field) {
  if (field.size() > 0xffffffffu) throw std::length_error("field too large");
  AppendU32(out_, static_cast<std::uint32_t>(field.size()));
  out_.insert(out_.end(), field.begin(), field.end());
  return *this;
}

FieldWriter& FieldWriter::Add(std::string_view field) {
  return Add(ByteView(reinterpret_cast<const std::uint8_t*>(field.data()), field.size()));
}

FieldWriter& FieldWriter::AddU64(std::uint64_t v) {
  Bytes tmp;
  AppendU64(tmp, v);
  return Add(tmp);
}

Bytes FieldReader::Next() {
  if (data_.size() - pos_ < 4) throw DecodeError("truncated field length");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = (len << 8) | data_[pos_ + i];
  pos_ += 4;
  if (data_.size() - pos_ < len) throw DecodeError("truncated field body");
  Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
  pos_ += len;
  return out;
}

std::string FieldReader::NextString() {
  Bytes b = Next();
  return std::string(b.begin(), b.end());
}

std::uint64_t FieldReader::NextU64() {
  Bytes b = Next();
  if (b.size() != 8) throw DecodeError("u64 field must be 8 bytes");
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

void FieldReader::ExpectDone() const {
  if (!done()) throw DecodeError("trailing bytes after record");
}

}  // namespace fairtrade
