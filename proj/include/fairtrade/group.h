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

#ifndef FAIRTRADE_GROUP_H_
#define FAIRTRADE_GROUP_H_

#include <gmpxx.h>

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fairtrade/bytes.h"
#include "fairtrade/rng.h"

namespace fairtrade {

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// No safe prime was found within the iteration bound.
class ParamGenerationTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Miller-Rabin rounds for all primality decisions; 4^-40 = 2^-80.
inline constexpr int kPrimalityRounds = 40;

// Public group description: primes p, q with q | p-1, a generator g of the
// order-q subgroup, and the message / padding bit lengths l0, l1.
class GroupParams {
 public:
  // Validates every invariant and throws InvalidParams on violation.
  static GroupParams FromValues(mpz_class p, mpz_class q, mpz_class g,
                                std::size_t l0, std::size_t l1);

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& g() const { return g_; }
  std::size_t l0() const { return l0_; }
  std::size_t l1() const { return l1_; }
  std::size_t lq() const;

  // Canonical encoding widths in bytes.
  std::size_t element_bytes() const;
  std::size_t scalar_bytes() const;
  std::size_t padded_message_bytes() const { return (l0_ + l1_) / 8; }

  // One "name=hex" line per field: p, q, g, l0, l1.
  std::string ToText() const;
  static GroupParams FromText(std::string_view text);

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.g_ == b.g_ && a.l0_ == b.l0_ &&
           a.l1_ == b.l1_;
  }

 private:
  GroupParams() = default;

  mpz_class p_, q_, g_;
  std::size_t l0_ = 0;
  std::size_t l1_ = 0;
};

struct SetupOptions {
  std::size_t lq = 512;
  std::size_t l0 = 256;
  std::size_t l1 = 256;
  // Candidates examined before giving up.
  std::size_t max_iterations = 50'000'000;
};

// Generates a safe-prime group p = 2q+1 with |q| = lq bits and g a
// non-identity quadratic residue.
GroupParams SetupParams(const SetupOptions& options, Rng& rng);

// The tiny group p = 23, q = 11, g = 2 used by exhaustive tests.
GroupParams TinyParams(std::size_t l0 = 8, std::size_t l1 = 8);

// Element of the order-q subgroup.
struct GroupElement {
  mpz_class value;
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.value == b.value;
  }
};

// Element of Z_q^*.
struct Scalar {
  mpz_class value;
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value == b.value; }
};

// base^exp mod modulus, exp >= 0. Not instrumented.
mpz_class ModExp(const mpz_class& base, const mpz_class& exp, const mpz_class& modulus);

// Group context: parameters plus an exponentiation counter. Every algorithm
// exponentiates through Pow so that per-operation costs can be audited.
class Group {
 public:
  explicit Group(GroupParams params) : params_(std::move(params)) {}
  Group(const Group& other) : params_(other.params_) {}
  Group& operator=(const Group& other) {
    params_ = other.params_;
    return *this;
  }

  const GroupParams& params() const { return params_; }
  const mpz_class& p() const { return params_.p(); }
  const mpz_class& q() const { return params_.q(); }

  // Counted modular exponentiation mod p.
  mpz_class Pow(const mpz_class& base, const mpz_class& exp) const;
  GroupElement GPow(const mpz_class& exp) const { return {Pow(params_.g(), exp)}; }

  std::uint64_t exp_count() const { return exp_count_.load(std::memory_order_relaxed); }

  // Uncounted subgroup membership test.
  bool Contains(const mpz_class& value) const;
  bool InScalarRange(const mpz_class& value) const { return value >= 1 && value < q(); }
  GroupElement ToElement(const mpz_class& value) const;  // throws DecodeError
  Scalar ToScalar(const mpz_class& value) const;         // throws DecodeError

  Scalar RandomScalar(Rng& rng) const;
  mpz_class InverseModQ(const mpz_class& v) const;
  mpz_class InverseModP(const mpz_class& v) const;

  Bytes Encode(const GroupElement& e) const { return EncodeModP(e.value); }
  Bytes Encode(const Scalar& s) const { return EncodeFixed(s.value, params_.scalar_bytes()); }
  Bytes EncodeModP(const mpz_class& v) const { return EncodeFixed(v, params_.element_bytes()); }

 private:
  GroupParams params_;
  mutable std::atomic<std::uint64_t> exp_count_{0};
};

// Counts exponentiations performed on a group within its lifetime.
class ExpScope {
 public:
  explicit ExpScope(const Group& group) : group_(group), start_(group.exp_count()) {}
  std::uint64_t count() const { return group_.exp_count() - start_; }

 private:
  const Group& group_;
  std::uint64_t start_;
};

}  // namespace fairtrade

#endif  // FAIRTRADE_GROUP_H_
