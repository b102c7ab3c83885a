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

#include "wikindex/byte_source.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>

#include "bzip2_stream.hpp"
#include "wikindex/errors.hpp"

namespace wikindex::io {

namespace {

class FileSource : public ByteSource {
 public:
  explicit FileSource(const std::filesystem::path& path)
      : file_(std::fopen(path.string().c_str(), "rb")) {
    if (!file_) throw FileNotFound("cannot open file: " + path.string());
  }
  ~FileSource() override {
    if (file_) std::fclose(file_);
  }

  std::size_t read(char* buf, std::size_t n) override {
    return std::fread(buf, 1, n, file_);
  }

 private:
  std::FILE* file_;
};

class GzipSource : public ByteSource {
 public:
  explicit GzipSource(std::unique_ptr<ByteSource> raw) : raw_(std::move(raw)) {
    std::memset(&strm_, 0, sizeof strm_);
    // 15 + 16: max window, gzip framing only.
    if (inflateInit2(&strm_, 15 + 16) != Z_OK) {
      throw Error("gzip: inflateInit2 failed");
    }
  }
  ~GzipSource() override { inflateEnd(&strm_); }

  std::size_t read(char* buf, std::size_t n) override {
    std::size_t written = 0;
    while (written < n && !done_) {
      if (strm_.avail_in == 0 && !raw_eof_) {
        const std::size_t got = raw_->read(in_, sizeof in_);
        raw_eof_ = (got == 0);
        strm_.next_in = reinterpret_cast<Bytef*>(in_);
        strm_.avail_in = static_cast<uInt>(got);
      }
      strm_.next_out = reinterpret_cast<Bytef*>(buf + written);
      strm_.avail_out = static_cast<uInt>(n - written);
      const int rc = inflate(&strm_, Z_NO_FLUSH);
      written = n - strm_.avail_out;
      if (rc == Z_STREAM_END) {
        // Possibly a concatenated member; only more input decides.
        if (strm_.avail_in == 0 && raw_eof_) {
          done_ = true;
        } else {
          if (inflateReset(&strm_) != Z_OK) throw Error("gzip: reset failed");
          mid_member_ = false;
        }
        continue;
      }
      if (rc == Z_BUF_ERROR && raw_eof_ && strm_.avail_in == 0) {
        if (mid_member_) throw Error("gzip: truncated stream");
        done_ = true;  // clean EOF right after a member boundary
        continue;
      }
      if (rc != Z_OK) {
        throw Error(std::string("gzip: ") +
                    (strm_.msg ? strm_.msg : "decode error"));
      }
      mid_member_ = true;
    }
    return written;
  }

 private:
  std::unique_ptr<ByteSource> raw_;
  z_stream strm_;
  char in_[1 << 16];
  bool raw_eof_ = false;
  bool done_ = false;
  bool mid_member_ = false;
};

bool has_suffix(const std::string& s, const char* suffix) {
  const std::size_t len = std::strlen(suffix);
  if (s.size() < len) return false;
  return std::equal(s.end() - len, s.end(), suffix, suffix + len,
                    [](char a, char b) {
                      return std::tolower(static_cast<unsigned char>(a)) == b;
                    });
}

}  // namespace

std::unique_ptr<ByteSource> open_byte_source(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw FileNotFound("no such file: " + path.string());
  }
  const std::string name = path.filename().string();
  for (const char* bad : {".xz", ".zst", ".lzma", ".7z", ".zip", ".lz4"}) {
    if (has_suffix(name, bad)) {
      throw UnsupportedCompression("unsupported compression for " + name +
                                   " (supported: .gz, .bz2, plain)");
    }
  }
  auto file = std::make_unique<FileSource>(path);
  if (has_suffix(name, ".gz")) {
    return std::make_unique<GzipSource>(std::move(file));
  }
  if (has_suffix(name, ".bz2")) {
    return std::make_unique<Bzip2Source>(std::move(file));
  }
  return file;
}

}  // namespace wikindex::io
