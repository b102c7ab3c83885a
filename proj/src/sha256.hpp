// Copyright 2026 The wikindex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WIKINDEX_SHA256_HPP
#define WIKINDEX_SHA256_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

namespace wikindex {

/// Incremental SHA-256 (FIPS 180-4), used for dump digests in manifests.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  /// Finalizes and returns the lowercase hex digest.
  std::string hex_digest();

 private:
  void process_block(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_;
  std::uint64_t total_len_ = 0;
  std::uint8_t buffer_[64];
  std::size_t buffer_len_ = 0;
  bool finalized_ = false;
};

/// "sha256:<hex>" of a file's raw bytes, streamed.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace wikindex

#endif  // WIKINDEX_SHA256_HPP
