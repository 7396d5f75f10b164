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

#include "fairtrade/group.h"

#include <array>
#include <map>
#include <sstream>
#include <vector>

namespace fairtrade {

namespace {

std::size_t BitLength(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

bool IsProbablePrime(const mpz_class& v, int rounds = kPrimalityRounds) {
  return mpz_probab_prime_p(v.get_mpz_t(), rounds) != 0;
}

const std::vector<unsigned long>& SievePrimes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kLimit = 4096;
    std::vector<bool> composite(kLimit, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 3; i < kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j < kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::string ToHexString(const mpz_class& v) { return v.get_str(16); }

mpz_class ParseHexInteger(const std::string& s) {
  if (s.empty()) throw DecodeError("empty hex field");
  mpz_class v;
  if (v.set_str(s, 16) != 0) throw DecodeError("invalid hex integer: " + s);
  return v;
}

}  // namespace

GroupParams GroupParams::FromValues(mpz_class p, mpz_class q, mpz_class g,
                                    std::size_t l0, std::size_t l1) {
  if (l0 < 1 || l1 < 1) throw InvalidParams("l0 and l1 must be at least 1");
  if ((l0 + l1) % 8 != 0) throw InvalidParams("l0 + l1 must be a multiple of 8");
  if (q < 3 || !IsProbablePrime(q)) throw InvalidParams("q is not an odd prime");
  if (p <= q || !IsProbablePrime(p)) throw InvalidParams("p is not a prime above q");
  if (mpz_divisible_p(mpz_class(p - 1).get_mpz_t(), q.get_mpz_t()) == 0) {
    throw InvalidParams("q does not divide p - 1");
  }
  if (g <= 1 || g >= p) throw InvalidParams("g out of range");
  if (ModExp(g, q, p) != 1) throw InvalidParams("g does not have order q");
  GroupParams out;
  out.p_ = std::move(p);
  out.q_ = std::move(q);
  out.g_ = std::move(g);
  out.l0_ = l0;
  out.l1_ = l1;
  return out;
}

std::size_t GroupParams::lq() const { return BitLength(q_); }
std::size_t GroupParams::element_bytes() const { return (BitLength(p_) + 7) / 8; }
std::size_t GroupParams::scalar_bytes() const { return (BitLength(q_) + 7) / 8; }

std::string GroupParams::ToText() const {
  std::ostringstream out;
  out << "p=" << ToHexString(p_) << "\n"
      << "q=" << ToHexString(q_) << "\n"
      << "g=" << ToHexString(g_) << "\n"
      << "l0=" << ToHexString(l0_) << "\n"
      << "l1=" << ToHexString(l1_) << "\n";
  return out.str();
}

GroupParams GroupParams::FromText(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DecodeError("params line without '=': " + line);
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto take = [&](const char* name) {
    auto it = fields.find(name);
    if (it == fields.end()) throw DecodeError(std::string("params missing field ") + name);
    return ParseHexInteger(it->second);
  };
  mpz_class l0 = take("l0");
  mpz_class l1 = take("l1");
  if (!l0.fits_ulong_p() || !l1.fits_ulong_p()) throw DecodeError("l0/l1 too large");
  return FromValues(take("p"), take("q"), take("g"), l0.get_ui(), l1.get_ui());
}

GroupParams SetupParams(const SetupOptions& options, Rng& rng) {
  const std::size_t lq = options.lq;
  if (lq < 3 || lq > 4096) throw InvalidParams("lq must be in [3, 4096]");
  if (options.l0 < 1 || options.l1 < 1 || (options.l0 + options.l1) % 8 != 0) {
    throw InvalidParams("l0, l1 >= 1 and l0 + l1 a multiple of 8 required");
  }
  const auto& primes = SievePrimes();
  const bool use_sieve = lq > 16;
  const mpz_class top = mpz_class(1) << (lq - 1);
  const mpz_class limit = mpz_class(1) << lq;

  std::size_t examined = 0;
  while (examined < options.max_iterations) {
    // Random odd lq-bit starting point, then walk upward by 2.
    mpz_class q = rng.RandomBits(lq - 1) | top | 1;
    std::vector<unsigned long> residues;
    if (use_sieve) {
      residues.reserve(primes.size());
      for (unsigned long sp : primes) residues.push_back(mpz_fdiv_ui(q.get_mpz_t(), sp));
    }
    for (; q < limit && examined < options.max_iterations; q += 2, ++examined) {
      if (use_sieve) {
        bool rejected = false;
        for (std::size_t i = 0; i < primes.size(); ++i) {
          unsigned long r = residues[i];
          // q divisible, or 2q + 1 divisible.
          if (r == 0 || (2 * r + 1) % primes[i] == 0) rejected = true;
          residues[i] = (r + 2) % primes[i];
        }
        if (rejected) continue;
      }
      mpz_class p = 2 * q + 1;
      if (!IsProbablePrime(q, 1) || !IsProbablePrime(p, 1)) continue;
      if (!IsProbablePrime(q) || !IsProbablePrime(p)) continue;

      const mpz_class two = 2;
      for (;;) {
        mpz_class a = rng.Uniform(two, p - 2);
        mpz_class g = a * a % p;
        if (g != 1) return GroupParams::FromValues(p, q, g, options.l0, options.l1);
      }
    }
  }
  throw ParamGenerationTimeout("no safe prime found within " +
                               std::to_string(options.max_iterations) + " candidates");
}

GroupParams TinyParams(std::size_t l0, std::size_t l1) {
  return GroupParams::FromValues(23, 11, 2, l0, l1);
}

mpz_class ModExp(const mpz_class& base, const mpz_class& exp, const mpz_class& modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  if (sgn(exp) < 0) throw std::invalid_argument("negative exponent");
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

mpz_class Group::Pow(const mpz_class& base, const mpz_class& exp) const {
  exp_count_.fetch_add(1, std::memory_order_relaxed);
  return ModExp(base, exp, params_.p());
}

bool Group::Contains(const mpz_class& value) const {
  return value >= 1 && value < p() && ModExp(value, q(), p()) == 1;
}

GroupElement Group::ToElement(const mpz_class& value) const {
  if (!Contains(value)) throw DecodeError("value is not in the order-q subgroup");
  return {value};
}

Scalar Group::ToScalar(const mpz_class& value) const {
  if (!InScalarRange(value)) throw DecodeError("scalar outside [1, q-1]");
  return {value};
}

Scalar Group::RandomScalar(Rng& rng) const { return {rng.Uniform(1, q() - 1)}; }

mpz_class Group::InverseModQ(const mpz_class& v) const {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), v.get_mpz_t(), q().get_mpz_t()) == 0) {
    throw std::domain_error("value not invertible mod q");
  }
  return out;
}

mpz_class Group::InverseModP(const mpz_class& v) const {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), v.get_mpz_t(), p().get_mpz_t()) == 0) {
    throw std::domain_error("value not invertible mod p");
  }
  return out;
}

}  // namespace fairtrade
