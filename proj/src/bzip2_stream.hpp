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

#ifndef WIKINDEX_BZIP2_STREAM_HPP
#define WIKINDEX_BZIP2_STREAM_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "wikindex/byte_source.hpp"

namespace wikindex::io {

/// Decode-only bzip2 reader (.bz2). Handles multi-block and concatenated
/// streams and verifies both block and stream CRCs. Deprecated randomized
/// blocks (pre-0.9.5 bzip2) are rejected.
class Bzip2Source : public ByteSource {
 public:
  explicit Bzip2Source(std::unique_ptr<ByteSource> raw);
  ~Bzip2Source() override;

  std::size_t read(char* buf, std::size_t n) override;

 private:
  bool read_stream_header();
  bool decode_block();  // false on end-of-stream footer
  void refill_bits(unsigned want);
  std::uint32_t take_bits(unsigned n);

  std::unique_ptr<ByteSource> raw_;

  // Bit reader state.
  std::uint64_t bit_buf_ = 0;
  unsigned bit_count_ = 0;
  bool raw_eof_ = false;

  // Per-stream state.
  bool in_stream_ = false;
  bool done_ = false;
  std::uint32_t block_size_limit_ = 0;
  std::uint32_t combined_crc_ = 0;

  // Decoded output pending delivery.
  std::vector<char> out_;
  std::size_t out_pos_ = 0;

  // Scratch reused across blocks.
  std::vector<std::uint8_t> bwt_;
  std::vector<std::uint32_t> next_;
};

}  // namespace wikindex::io

#endif  // WIKINDEX_BZIP2_STREAM_HPP
