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

#ifndef WIKINDEX_BYTE_SOURCE_HPP
#define WIKINDEX_BYTE_SOURCE_HPP

#include <cstddef>
#include <filesystem>
#include <memory>

namespace wikindex::io {

/// Sequential reader over a possibly compressed file.
class ByteSource {
 public:
  virtual ~ByteSource() = default;

  /// Reads up to `n` bytes into `buf`. Returns 0 only at end of stream.
  virtual std::size_t read(char* buf, std::size_t n) = 0;
};

/// Opens `path`, picking the decoder from the file extension:
/// `.gz` -> gzip, `.bz2` -> bzip2, anything else is read as-is.
/// Throws FileNotFound or UnsupportedCompression (for `.xz`, `.zst`, ...).
std::unique_ptr<ByteSource> open_byte_source(const std::filesystem::path& path);

}  // namespace wikindex::io

#endif  // WIKINDEX_BYTE_SOURCE_HPP
