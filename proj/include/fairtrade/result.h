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

#ifndef FAIRTRADE_RESULT_H_
#define FAIRTRADE_RESULT_H_

#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>

namespace fairtrade {

// Why a verification step refused its input. Callers branch on these, so a
// rejection is a value rather than an exception.
enum class Reject {
  kMalformedRequest,
  kInvalidCiphertext,
  kInvalidReKey,
  kDecryptionCheckFailed,
};

std::string_view RejectName(Reject r);

template <typename T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(Reject r) : v_(r) {}                // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Result::value() on a rejection");
    return std::get<T>(v_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result::value() on a rejection");
    return std::get<T>(std::move(v_));
  }
  Reject reject() const {
    if (ok()) throw std::logic_error("Result::reject() on a success");
    return std::get<Reject>(v_);
  }

 private:
  std::variant<T, Reject> v_;
};

}  // namespace fairtrade

#endif  // FAIRTRADE_RESULT_H_
