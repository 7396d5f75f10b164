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

#include "fairtrade/result.h"

namespace fairtrade {

std::string_view RejectName(Reject r) {
  switch (r) {
    case Reject::kMalformedRequest:
      return "malformed request";
    case Reject::kInvalidCiphertext:
      return "invalid ciphertext";
    case Reject::kInvalidReKey:
      return "invalid re-encryption key";
    case Reject::kDecryptionCheckFailed:
      return "decryption check failed";
  }
  return "unknown";
}

}  // namespace fairtrade
