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

#include "bzip2_stream.hpp"

#include <array>
#include <cstring>

#include "wikindex/errors.hpp"

namespace wikindex::io {

namespace {

constexpr unsigned kMaxAlpha = 258;   // 256 byte symbols + RUNB + EOB headroom
constexpr unsigned kMaxGroups = 6;
constexpr unsigned kMaxCodeLen = 23;
constexpr unsigned kGroupSize = 50;

[[noreturn]] void corrupt(const char* what) {
  throw Error(std::string("bzip2: corrupt stream (") + what + ")");
}

// bzip2 uses the MSB-first CRC-32 with polynomial 0x04C11DB7.
struct CrcTable {
  std::array<std::uint32_t, 256> t{};
  constexpr CrcTable() {
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i << 24;
      for (int k = 0; k < 8; ++k) {
        c = (c & 0x80000000u) ? (c << 1) ^ 0x04C11DB7u : (c << 1);
      }
      t[i] = c;
    }
  }
};

constexpr CrcTable kCrc;

struct BlockCrc {
  std::uint32_t value = 0xFFFFFFFFu;
  void update(std::uint8_t byte) {
    value = (value << 8) ^ kCrc.t[(value >> 24) ^ byte];
  }
  std::uint32_t final() const { return value ^ 0xFFFFFFFFu; }
};

// Canonical Huffman decoding tables, laid out the way the format defines
// them (per-length limits plus a symbol permutation).
struct HuffmanTable {
  std::array<std::int32_t, kMaxCodeLen + 2> limit{};
  std::array<std::int32_t, kMaxCodeLen + 2> base{};
  std::array<std::uint16_t, kMaxAlpha> perm{};
  unsigned min_len = 0;

  void build(const std::uint8_t* lengths, unsigned alpha_size) {
    unsigned max_len = 1;
    min_len = kMaxCodeLen;
    for (unsigned s = 0; s < alpha_size; ++s) {
      if (lengths[s] < 1 || lengths[s] > kMaxCodeLen) corrupt("code length");
      if (lengths[s] > max_len) max_len = lengths[s];
      if (lengths[s] < min_len) min_len = lengths[s];
    }
    unsigned pp = 0;
    for (unsigned l = min_len; l <= max_len; ++l) {
      for (unsigned s = 0; s < alpha_size; ++s) {
        if (lengths[s] == l) perm[pp++] = static_cast<std::uint16_t>(s);
      }
    }
    std::array<std::int32_t, kMaxCodeLen + 2> count{};
    for (unsigned s = 0; s < alpha_size; ++s) count[lengths[s] + 1]++;
    for (unsigned l = 1; l < count.size(); ++l) count[l] += count[l - 1];
    base = count;
    std::int32_t vec = 0;
    limit.fill(0);
    for (unsigned l = min_len; l <= max_len; ++l) {
      vec += base[l + 1] - base[l];
      limit[l] = vec - 1;
      vec <<= 1;
    }
    for (unsigned l = min_len + 1; l <= max_len; ++l) {
      base[l] = ((limit[l - 1] + 1) << 1) - base[l];
    }
  }
};

}  // namespace

Bzip2Source::Bzip2Source(std::unique_ptr<ByteSource> raw)
    : raw_(std::move(raw)) {
  if (!read_stream_header()) {
    corrupt("missing BZh header");
  }
}

Bzip2Source::~Bzip2Source() = default;

void Bzip2Source::refill_bits(unsigned want) {
  while (bit_count_ < want) {
    char byte;
    if (raw_eof_ || raw_->read(&byte, 1) == 0) {
      raw_eof_ = true;
      corrupt("unexpected end of input");
    }
    bit_buf_ = (bit_buf_ << 8) | static_cast<std::uint8_t>(byte);
    bit_count_ += 8;
  }
}

std::uint32_t Bzip2Source::take_bits(unsigned n) {
  refill_bits(n);
  const std::uint32_t v =
      static_cast<std::uint32_t>((bit_buf_ >> (bit_count_ - n)) &
                                 ((n == 32) ? 0xFFFFFFFFull : ((1ull << n) - 1)));
  bit_count_ -= n;
  return v;
}

bool Bzip2Source::read_stream_header() {
  // Streams are byte aligned; discard any padding bits of a previous one.
  bit_count_ -= bit_count_ % 8;
  char magic[4];
  std::size_t got = 0;
  if (bit_count_ >= 8) {
    magic[0] = static_cast<char>(take_bits(8));
    got = 1;
  }
  while (got < 4) {
    const std::size_t n = raw_->read(magic + got, 4 - got);
    if (n == 0) {
      if (got == 0) return false;  // clean EOF between streams
      corrupt("truncated stream header");
    }
    got += n;
  }
  if (magic[0] != 'B' || magic[1] != 'Z' || magic[2] != 'h') {
    corrupt("bad magic");
  }
  if (magic[3] < '1' || magic[3] > '9') corrupt("bad block-size digit");
  block_size_limit_ = 100000u * static_cast<std::uint32_t>(magic[3] - '0');
  combined_crc_ = 0;
  in_stream_ = true;
  return true;
}

bool Bzip2Source::decode_block() {
  const std::uint64_t magic =
      (static_cast<std::uint64_t>(take_bits(24)) << 24) | take_bits(24);
  if (magic == 0x177245385090ull) {
    // Stream footer: verify the combined CRC, then look for another stream.
    const std::uint32_t stream_crc = take_bits(32);
    if (stream_crc != combined_crc_) corrupt("stream CRC mismatch");
    in_stream_ = false;
    return false;
  }
  if (magic != 0x314159265359ull) corrupt("bad block magic");

  const std::uint32_t expected_crc = take_bits(32);
  if (take_bits(1) != 0) {
    throw Error("bzip2: randomized blocks are not supported");
  }
  const std::uint32_t orig_ptr = take_bits(24);

  // Symbol map: 16-bit coarse map, then one 16-bit fine map per set bit.
  std::uint8_t used[256];
  std::memset(used, 0, sizeof used);
  unsigned n_in_use = 0;
  const std::uint32_t coarse = take_bits(16);
  std::uint8_t seq_to_byte[256];
  for (unsigned i = 0; i < 16; ++i) {
    if (!(coarse & (0x8000u >> i))) continue;
    const std::uint32_t fine = take_bits(16);
    for (unsigned j = 0; j < 16; ++j) {
      if (fine & (0x8000u >> j)) used[i * 16 + j] = 1;
    }
  }
  for (unsigned b = 0; b < 256; ++b) {
    if (used[b]) seq_to_byte[n_in_use++] = static_cast<std::uint8_t>(b);
  }
  if (n_in_use == 0) corrupt("empty symbol map");
  const unsigned alpha_size = n_in_use + 2;
  const unsigned eob = alpha_size - 1;

  const unsigned n_groups = take_bits(3);
  if (n_groups < 2 || n_groups > kMaxGroups) corrupt("group count");
  const unsigned n_selectors = take_bits(15);
  if (n_selectors == 0) corrupt("selector count");

  std::vector<std::uint8_t> selectors(n_selectors);
  {
    std::uint8_t mtf[kMaxGroups];
    for (unsigned g = 0; g < n_groups; ++g) mtf[g] = static_cast<std::uint8_t>(g);
    for (unsigned s = 0; s < n_selectors; ++s) {
      unsigned j = 0;
      while (take_bits(1)) {
        if (++j >= n_groups) corrupt("selector value");
      }
      const std::uint8_t g = mtf[j];
      for (; j > 0; --j) mtf[j] = mtf[j - 1];
      mtf[0] = g;
      selectors[s] = g;
    }
  }

  std::array<HuffmanTable, kMaxGroups> tables;
  for (unsigned g = 0; g < n_groups; ++g) {
    std::uint8_t lens[kMaxAlpha];
    std::uint32_t cur = take_bits(5);
    for (unsigned s = 0; s < alpha_size; ++s) {
      while (take_bits(1)) {
        if (take_bits(1)) {
          --cur;
        } else {
          ++cur;
        }
        if (cur < 1 || cur > kMaxCodeLen) corrupt("length delta");
      }
      lens[s] = static_cast<std::uint8_t>(cur);
    }
    tables[g].build(lens, alpha_size);
  }

  // MTF + run-length decode into the BWT buffer.
  bwt_.clear();
  bwt_.reserve(block_size_limit_);
  std::uint32_t byte_counts[256];
  std::memset(byte_counts, 0, sizeof byte_counts);

  std::uint8_t mtf[256];
  for (unsigned i = 0; i < n_in_use; ++i) mtf[i] = seq_to_byte[i];

  unsigned group_pos = 0;
  unsigned selector_idx = 0;
  const HuffmanTable* table = nullptr;

  auto next_symbol = [&]() -> unsigned {
    if (group_pos == 0) {
      if (selector_idx >= n_selectors) corrupt("ran out of selectors");
      table = &tables[selectors[selector_idx++]];
      group_pos = kGroupSize;
    }
    --group_pos;
    unsigned zn = table->min_len;
    std::int32_t zvec = static_cast<std::int32_t>(take_bits(zn));
    while (zvec > table->limit[zn]) {
      if (++zn > kMaxCodeLen) corrupt("huffman code overrun");
      zvec = (zvec << 1) | static_cast<std::int32_t>(take_bits(1));
    }
    const std::int32_t idx = zvec - table->base[zn];
    if (idx < 0 || idx >= static_cast<std::int32_t>(alpha_size)) {
      corrupt("huffman symbol");
    }
    return table->perm[idx];
  };

  unsigned sym = next_symbol();
  while (sym != eob) {
    if (sym <= 1) {
      // RUNA/RUNB encode a run of the current MTF front byte.
      std::uint64_t run = 0;
      unsigned bit = 0;
      while (sym <= 1) {
        run += static_cast<std::uint64_t>(sym + 1) << bit;
        ++bit;
        if (bit > 40) corrupt("run too long");
        sym = next_symbol();
      }
      const std::uint8_t byte = mtf[0];
      if (bwt_.size() + run > block_size_limit_) corrupt("block overflow");
      byte_counts[byte] += static_cast<std::uint32_t>(run);
      bwt_.insert(bwt_.end(), static_cast<std::size_t>(run), byte);
      continue;
    }
    const unsigned j = sym - 1;
    if (j >= n_in_use) corrupt("mtf index");
    const std::uint8_t byte = mtf[j];
    std::memmove(mtf + 1, mtf, j);
    mtf[0] = byte;
    if (bwt_.size() + 1 > block_size_limit_) corrupt("block overflow");
    byte_counts[byte]++;
    bwt_.push_back(byte);
    sym = next_symbol();
  }

  const std::uint32_t n = static_cast<std::uint32_t>(bwt_.size());
  if (n == 0 || orig_ptr >= n) corrupt("orig pointer");

  // Inverse BWT: next_[f] = source index of the f-th smallest (byte, pos).
  std::uint32_t cftab[257];
  cftab[0] = 0;
  for (unsigned b = 0; b < 256; ++b) cftab[b + 1] = cftab[b] + byte_counts[b];
  next_.resize(n);
  {
    std::uint32_t fill[256];
    std::memcpy(fill, cftab, sizeof fill);
    for (std::uint32_t i = 0; i < n; ++i) next_[fill[bwt_[i]]++] = i;
  }

  // Walk the permutation, undoing the final run-length layer (a run of four
  // equal bytes is followed by a count of extra repeats).
  out_.clear();
  out_pos_ = 0;
  BlockCrc crc;
  std::uint32_t pos = next_[orig_ptr];
  std::uint32_t remaining = n;
  int run_len = 0;
  int prev = -1;
  while (remaining > 0) {
    const std::uint8_t byte = bwt_[pos];
    pos = next_[pos];
    --remaining;
    if (run_len == 4) {
      // `byte` is the repeat count, not data.
      for (unsigned r = 0; r < byte; ++r) {
        out_.push_back(static_cast<char>(prev));
        crc.update(static_cast<std::uint8_t>(prev));
      }
      run_len = 0;
      prev = -1;
      continue;
    }
    if (byte == prev) {
      ++run_len;
    } else {
      run_len = 1;
      prev = byte;
    }
    out_.push_back(static_cast<char>(byte));
    crc.update(byte);
  }
  if (run_len == 4) corrupt("truncated final run");

  if (crc.final() != expected_crc) corrupt("block CRC mismatch");
  combined_crc_ = ((combined_crc_ << 1) | (combined_crc_ >> 31)) ^ expected_crc;
  return true;
}

std::size_t Bzip2Source::read(char* buf, std::size_t n) {
  std::size_t written = 0;
  while (written < n) {
    if (out_pos_ < out_.size()) {
      const std::size_t take =
          std::min(n - written, out_.size() - out_pos_);
      std::memcpy(buf + written, out_.data() + out_pos_, take);
      out_pos_ += take;
      written += take;
      continue;
    }
    if (done_) break;
    if (!in_stream_) {
      if (!read_stream_header()) {
        done_ = true;
        break;
      }
    }
    if (!decode_block()) {
      continue;  // footer consumed; try the next concatenated stream
    }
  }
  return written;
}

}  // namespace wikindex::io
