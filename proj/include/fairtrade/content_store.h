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

// Content-addressed blob storage: blobs are named by the SHA-256 of their
// bytes and every read re-hashes what it returns.

#ifndef FAIRTRADE_CONTENT_STORE_H_
#define FAIRTRADE_CONTENT_STORE_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "fairtrade/bytes.h"
#include "fairtrade/digest.h"

namespace fairtrade {

struct ContentHash {
  Sha256Digest digest{};

  static ContentHash Of(ByteView content);
  static ContentHash FromHex(std::string_view hex);  // DecodeError on bad input
  std::string ToHex() const;

  friend bool operator==(const ContentHash&, const ContentHash&) = default;
  friend auto operator<=>(const ContentHash&, const ContentHash&) = default;
};

// Stored bytes no longer hash to their name.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlobStore {
 public:
  virtual ~BlobStore() = default;

  // Idempotent. std::invalid_argument on empty input, StorageError on I/O
  // failure.
  virtual ContentHash Put(ByteView content) = 0;

  // nullopt when absent; IntegrityError when present but corrupted.
  virtual std::optional<Bytes> Get(const ContentHash& hash) const = 0;
};

class InMemoryBlobStore final : public BlobStore {
 public:
  ContentHash Put(ByteView content) override;
  std::optional<Bytes> Get(const ContentHash& hash) const override;

  std::size_t size() const;
  // Test hook: overwrite stored bytes without renaming.
  void CorruptForTesting(const ContentHash& hash, Bytes replacement);

 private:
  mutable std::mutex mu_;
  std::map<ContentHash, Bytes> blobs_;
};

// Layout: <root>/<first two hex digits>/<full hex digest>. Writes go to a
// temporary file in the same directory and are renamed into place.
class FileBlobStore final : public BlobStore {
 public:
  explicit FileBlobStore(std::filesystem::path root);

  ContentHash Put(ByteView content) override;
  std::optional<Bytes> Get(const ContentHash& hash) const override;

  std::filesystem::path PathFor(const ContentHash& hash) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace fairtrade

#endif  // FAIRTRADE_CONTENT_STORE_H_
