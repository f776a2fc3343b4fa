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

#ifndef TTEMB_VOCAB_STORE_H_
#define TTEMB_VOCAB_STORE_H_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ttemb/tensor.h"
#include "ttemb/tt.h"

namespace ttemb {

using TokenId = std::uint64_t;

// TTE1 layout, little-endian throughout:
//   "TTE1" | version u16 | d u32 | N u8 | shape N x u32 | epsilon f64 |
//   entry count u64 |
//   index: per entry (token id u64, payload byte offset u64, ranks (N+1) x u16) |
//   core payloads, binary32, cores in order, each in (r_{k-1}, I_k, r_k)
//   little-endian layout | CRC32 of all preceding bytes
// Entries are written in ascending token id order; payload offsets are
// relative to the start of the payload section.
inline constexpr std::uint16_t kTte1Version = 1;

std::size_t tte1_header_size(std::size_t order);
std::size_t tte1_index_entry_size(std::size_t order);

struct VocabMetadata {
  std::string model_name;
  std::int64_t created_unix = 0;
  std::uint16_t format_version = kTte1Version;
};

// Token id -> TT vector map sharing one shape and one compression spec.
// Values are immutable once inserted, so copies share entry storage.
class CompressedVocab {
 public:
  explicit CompressedVocab(CompressSpec spec, VocabMetadata meta = {});

  // One entry per row of the V x d table, token id = row index. Rows are
  // compressed on `threads` workers; the result does not depend on the
  // thread count. ShapeMismatch when d != prod(shape).
  static CompressedVocab build(const Matrix& table, const CompressSpec& spec,
                               std::size_t threads = 1, VocabMetadata meta = {});

  // DuplicateToken if present, ShapeMismatch if the length is not d.
  void add_token(TokenId id, std::span<const double> embedding);
  // TokenNotFound if absent.
  void remove_token(TokenId id);

  // TokenNotFound if absent.
  std::vector<double> lookup(TokenId id) const;
  void lookup_into(TokenId id, std::span<double> out) const;
  // Rows for `ids` in order, concatenated: exactly ids.size() * d values.
  std::vector<double> lookup_batch(std::span<const TokenId> ids) const;

  const TTVector& entry(TokenId id) const;
  bool contains(TokenId id) const { return entries_.count(id) != 0; }
  std::size_t size() const { return entries_.size(); }
  std::vector<TokenId> ids() const;

  const CompressSpec& spec() const { return spec_; }
  const Shape& shape() const { return spec_.shape; }
  double epsilon() const { return spec_.epsilon; }
  std::size_t dim() const { return dim_; }
  const VocabMetadata& metadata() const { return meta_; }

  std::uint64_t total_params() const { return total_params_; }
  std::uint64_t dense_params() const { return static_cast<std::uint64_t>(size()) * dim_; }
  // (V d - total) / (V d); 0 for an empty store.
  double eta_emb() const;
  // V d / total - 1; 0 for an empty store.
  double eta() const;

  std::vector<std::uint8_t> encode() const;
  // CorruptFile on bad magic, truncation, inconsistent index or checksum;
  // VersionMismatch on an unknown version. Rank caps are not part of the
  // format; the decoded store caps only at the structural maximum.
  static CompressedVocab decode(std::span<const std::uint8_t> bytes);

  void save(const std::string& path) const;
  static CompressedVocab load(const std::string& path);

 private:
  void insert(TokenId id, TTVector tt);

  CompressSpec spec_;
  std::size_t dim_ = 0;
  std::map<TokenId, std::shared_ptr<const TTVector>> entries_;
  std::uint64_t total_params_ = 0;
  VocabMetadata meta_;
};

// Reader-writer wrapper: readers take an immutable snapshot and reconstruct
// without holding any lock; writers copy, modify and publish a new snapshot.
class VocabHandle {
 public:
  explicit VocabHandle(CompressedVocab vocab)
      : current_(std::make_shared<const CompressedVocab>(std::move(vocab))) {}

  std::shared_ptr<const CompressedVocab> snapshot() const {
    std::lock_guard<std::mutex> lock(publish_mu_);
    return current_;
  }

  // Runs `edit` on a private copy and publishes it. If edit throws, the
  // published snapshot is unchanged.
  void update(const std::function<void(CompressedVocab&)>& edit);

 private:
  mutable std::mutex publish_mu_;
  std::mutex writer_mu_;
  std::shared_ptr<const CompressedVocab> current_;
};

// Random access into a TTE1 file: reads the header and index only, then one
// entry payload per lookup. The checksum is not verified on this path.
class Tte1Reader {
 public:
  explicit Tte1Reader(const std::string& path);

  const Shape& shape() const { return shape_; }
  double epsilon() const { return epsilon_; }
  std::size_t size() const { return index_.size(); }
  bool contains(TokenId id) const { return index_.count(id) != 0; }

  TTVector read_entry(TokenId id);
  std::vector<double> lookup(TokenId id) { return reconstruct(read_entry(id)); }

 private:
  struct IndexEntry {
    std::uint64_t offset = 0;
    std::vector<std::size_t> ranks;
  };
  std::ifstream in_;
  Shape shape_;
  double epsilon_ = 0.0;
  std::uint64_t payload_start_ = 0;
  std::map<TokenId, IndexEntry> index_;
};

}  // namespace ttemb

#endif  // TTEMB_VOCAB_STORE_H_
