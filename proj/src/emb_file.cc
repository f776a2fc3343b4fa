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

#include "ttemb/emb_file.h"

#include <cstring>

#include "ttemb/binary_io.h"
#include "ttemb/error.h"

namespace ttemb {

namespace {
constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
}  // namespace

Matrix EmbeddingTable::to_matrix() const {
  Matrix m(vocab, dim);
  for (std::uint64_t i = 0; i < vocab; ++i)
    for (std::uint32_t j = 0; j < dim; ++j) m(i, j) = values[i * dim + j];
  return m;
}

EmbeddingTable EmbeddingTable::from_matrix(const Matrix& m) {
  EmbeddingTable t;
  t.vocab = m.rows;
  t.dim = static_cast<std::uint32_t>(m.cols);
  t.values.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.values[i * m.cols + j] = static_cast<float>(m(i, j));
  return t;
}

EmbeddingTable EmbeddingTable::from_rows(std::uint32_t dim,
                                         const std::vector<std::vector<double>>& rows) {
  EmbeddingTable t;
  t.vocab = rows.size();
  t.dim = dim;
  t.values.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw Error(ErrorCode::kShapeMismatch, "row length differs from d");
    for (double v : r) t.values.push_back(static_cast<float>(v));
  }
  return t;
}

std::vector<std::uint8_t> encode_emb1(const EmbeddingTable& table) {
  if (table.values.size() != table.vocab * table.dim) {
    throw Error(ErrorCode::kShapeMismatch, "table payload does not match V*d");
  }
  ByteWriter w;
  w.bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  w.u16(kEmb1Version);
  w.u64(table.vocab);
  w.u32(table.dim);
  for (float v : table.values) w.f32(v);
  append_crc(w);
  return std::move(w.buffer());
}

EmbeddingTable decode_emb1(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kCorruptFile, "not an EMB1 file");
  }
  ByteReader header(bytes);
  header.bytes(4);
  if (header.remaining() < 2) throw Error(ErrorCode::kCorruptFile, "truncated header");
  const std::uint16_t version = header.u16();
  if (version != kEmb1Version) {
    throw Error(ErrorCode::kVersionMismatch, "EMB1 version " + std::to_string(version));
  }
  ByteReader r(verify_crc(bytes));
  r.seek(6);
  EmbeddingTable t;
  t.vocab = r.u64();
  t.dim = r.u32();
  if (t.dim != 0 && t.vocab > r.remaining() / 4 / t.dim) {
    throw Error(ErrorCode::kCorruptFile, "payload shorter than V*d");
  }
  const std::uint64_t n = t.vocab * t.dim;
  if (r.remaining() != n * 4) throw Error(ErrorCode::kCorruptFile, "payload size mismatch");
  t.values.resize(n);
  for (auto& v : t.values) v = r.f32();
  return t;
}

EmbeddingTable read_emb1(const std::string& path) { return decode_emb1(read_file(path)); }

void write_emb1(const std::string& path, const EmbeddingTable& table) {
  write_file_atomic(path, encode_emb1(table));
}

}  // namespace ttemb
