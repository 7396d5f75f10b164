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

#include "fairtrade/content_store.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <system_error>

#include <unistd.h>

namespace fairtrade {

ContentHash ContentHash::Of(ByteView content) { return {Sha256(content)}; }

ContentHash ContentHash::FromHex(std::string_view hex) {
  Bytes raw = fairtrade::FromHex(hex);
  if (raw.size() != 32) throw DecodeError("content hash must be 32 bytes");
  ContentHash h;
  std::copy(raw.begin(), raw.end(), h.digest.begin());
  return h;
}

std::string ContentHash::ToHex() const { return fairtrade::ToHex(digest); }

ContentHash InMemoryBlobStore::Put(ByteView content) {
  if (content.empty()) throw std::invalid_argument("cannot store empty content");
  ContentHash h = ContentHash::Of(content);
  std::lock_guard lock(mu_);
  blobs_.try_emplace(h, content.begin(), content.end());
  return h;
}

std::optional<Bytes> InMemoryBlobStore::Get(const ContentHash& hash) const {
  std::lock_guard lock(mu_);
  auto it = blobs_.find(hash);
  if (it == blobs_.end()) return std::nullopt;
  if (ContentHash::Of(it->second) != hash) {
    throw IntegrityError("blob " + hash.ToHex() + " does not match its hash");
  }
  return it->second;
}

std::size_t InMemoryBlobStore::size() const {
  std::lock_guard lock(mu_);
  return blobs_.size();
}

void InMemoryBlobStore::CorruptForTesting(const ContentHash& hash, Bytes replacement) {
  std::lock_guard lock(mu_);
  blobs_.at(hash) = std::move(replacement);
}

FileBlobStore::FileBlobStore(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw StorageError("cannot create store root " + root_.string() + ": " + ec.message());
}

std::filesystem::path FileBlobStore::PathFor(const ContentHash& hash) const {
  std::string hex = hash.ToHex();
  return root_ / hex.substr(0, 2) / hex;
}

ContentHash FileBlobStore::Put(ByteView content) {
  if (content.empty()) throw std::invalid_argument("cannot store empty content");
  ContentHash h = ContentHash::Of(content);
  std::filesystem::path target = PathFor(h);
  std::error_code ec;
  // A same-sized file is taken as present; anything else is rewritten.
  if (std::filesystem::exists(target, ec) &&
      std::filesystem::file_size(target, ec) == content.size() && !ec) {
    return h;
  }
  std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) throw StorageError("cannot create " + target.parent_path().string() + ": " + ec.message());

  static std::atomic<unsigned> sequence{0};
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(sequence++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw StorageError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw StorageError("rename failed for " + target.string());
  }
  return h;
}

std::optional<Bytes> FileBlobStore::Get(const ContentHash& hash) const {
  std::filesystem::path path = PathFor(hash);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (ContentHash::Of(data) != hash) {
    throw IntegrityError("blob " + path.string() + " does not match its hash");
  }
  return data;
}

}  // namespace fairtrade
