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

#ifndef TTEMB_EMB_FILE_H_
#define TTEMB_EMB_FILE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttemb/tensor.h"

namespace ttemb {

// Dense embedding table as stored in EMB1 files:
//   "EMB1" | version u16 | V u64 | d u32 | V*d binary32 row-major | CRC32
// All integers and floats little-endian; the CRC covers every byte before it.
inline constexpr std::uint16_t kEmb1Version = 1;

struct EmbeddingTable {
  std::uint64_t vocab = 0;
  std::uint32_t dim = 0;
  std::vector<float> values;  // row-major, vocab * dim

  std::span<const float> row(std::uint64_t i) const {
    return {values.data() + i * dim, dim};
  }
  // V x d matrix in double precision.
  Matrix to_matrix() const;
  static EmbeddingTable from_matrix(const Matrix& m);
  static EmbeddingTable from_rows(std::uint32_t dim, const std::vector<std::vector<double>>& rows);
};

std::vector<std::uint8_t> encode_emb1(const EmbeddingTable& table);
// CorruptFile on bad magic, size or checksum; VersionMismatch on version.
EmbeddingTable decode_emb1(std::span<const std::uint8_t> bytes);

EmbeddingTable read_emb1(const std::string& path);
void write_emb1(const std::string& path, const EmbeddingTable& table);

}  // namespace ttemb

#endif  // TTEMB_EMB_FILE_H_
