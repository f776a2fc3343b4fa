// Copyright 2026 The ttemb Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TTEMB_BINARY_IO_H_
#define TTEMB_BINARY_IO_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ttemb {

// CRC-32 (IEEE 802.3 polynomial, as used by zlib and PNG).
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

// Appends little-endian encodings to a byte buffer.
class ByteWriter {
 public:
  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f32(float v);
  void f64(double v);

  std::vector<std::uint8_t>& buffer() { return buf_; }
  std::size_t size() const { return buf_.size(); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

// Bounds-checked little-endian decoding; running past the end throws
// CorruptFile.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::span<const std::uint8_t> bytes(std::size_t n);
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  float f32();
  double f64();

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  void seek(std::size_t pos);

 private:
  std::uint64_t get(int n);
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// Appends CRC32 of everything written so far.
void append_crc(ByteWriter& w);
// Checks and strips a trailing CRC32; throws CorruptFile on mismatch or when
// the buffer is shorter than 4 bytes.
std::span<const std::uint8_t> verify_crc(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::string& path);

// Writes `bytes` to a sibling temporary file, fsyncs it and renames it over
// `path`, so readers only ever see the old or the new complete file.
// `before_rename` runs after the temp file is durable (tests use it to
// simulate a crash).
void write_file_atomic(const std::string& path, std::span<const std::uint8_t> bytes,
                       const std::function<void()>& before_rename = {});

// Advisory exclusive lock on `path + ".lock"`, held for the object lifetime.
class FileLock {
 public:
  explicit FileLock(const std::string& path);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace ttemb

#endif  // TTEMB_BINARY_IO_H_
