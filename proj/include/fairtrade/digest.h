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

#ifndef FAIRTRADE_DIGEST_H_
#define FAIRTRADE_DIGEST_H_

#include <array>
#include <cstddef>
#include <cstdint>

#include "fairtrade/bytes.h"

namespace fairtrade {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest Sha256(ByteView data);

// SHAKE256 output of exactly `out_len` bytes. Longer requests extend shorter
// ones: the first n bytes never depend on out_len.
Bytes Shake256(ByteView data, std::size_t out_len);

}  // namespace fairtrade

#endif  // FAIRTRADE_DIGEST_H_
