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

#include "ttemb/vocab_store.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "ttemb/binary_io.h"
#include "ttemb/error.h"

namespace ttemb {

namespace {

constexpr char kMagic[4] = {'T', 'T', 'E', '1'};

// Header fields shared by the full decoder and the random-access reader.
struct Tte1Header {
  std::uint32_t dim = 0;
  Shape shape;
  double epsilon = 0.0;
  std::uint64_t count = 0;
};

Tte1Header read_header(ByteReader& r) {
  const auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kCorruptFile, "not a TTE1 file");
  }
  const std::uint16_t version = r.u16();
  if (version != kTte1Version) {
    throw Error(ErrorCode::kVersionMismatch, "TTE1 version " + std::to_string(version));
  }
  Tte1Header h;
  h.dim = r.u32();
  const std::uint8_t order = r.u8();
  if (order == 0) throw Error(ErrorCode::kCorruptFile, "order 0");
  for (std::uint8_t k = 0; k < order; ++k) {
    const std::uint32_t v = r.u32();
    if (v == 0) throw Error(ErrorCode::kCorruptFile, "zero mode size");
    h.shape.push_back(v);
  }
  if (shape_product(h.shape) != h.dim) throw Error(ErrorCode::kCorruptFile, "shape does not match d");
  h.epsilon = r.f64();
  h.count = r.u64();
  return h;
}

std::vector<std::size_t> read_ranks(ByteReader& r, const Shape& shape) {
  std::vector<std::size_t> ranks(shape.size() + 1);
  for (auto& v : ranks) {
    v = r.u16();
    if (v == 0) throw Error(ErrorCode::kCorruptFile, "zero rank");
  }
  if (ranks.front() != 1 || ranks.back() != 1) {
    throw Error(ErrorCode::kCorruptFile, "boundary ranks must be 1");
  }
  return ranks;
}

TTVector read_cores(ByteReader& r, const Shape& shape, const std::vector<std::size_t>& ranks) {
  TTVector tt;
  tt.shape = shape;
  tt.ranks = ranks;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    std::vector<double> data(ranks[k] * shape[k] * ranks[k + 1]);
    for (double& v : data) v = r.f32();
    tt.cores.emplace_back(Shape{ranks[k], shape[k], ranks[k + 1]}, std::move(data));
  }
  return tt;
}

}  // namespace

std::size_t tte1_header_size(std::size_t order) { return 4 + 2 + 4 + 1 + 4 * order + 8 + 8; }

std::size_t tte1_index_entry_size(std::size_t order) { return 8 + 8 + 2 * (order + 1); }

CompressedVocab::CompressedVocab(CompressSpec spec, VocabMetadata meta)
    : spec_(std::move(spec)), meta_(std::move(meta)) {
  spec_.validate();
  if (spec_.shape.size() > std::numeric_limits<std::uint8_t>::max()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor order too large for TTE1");
  }
  dim_ = shape_product(spec_.shape);
}

CompressedVocab CompressedVocab::build(const Matrix& table, const CompressSpec& spec,
                                       std::size_t threads, VocabMetadata meta) {
  CompressedVocab vocab(spec, std::move(meta));
  if (table.rows > 0 && table.cols != vocab.dim_) {
    throw Error(ErrorCode::kShapeMismatch,
                "table has d=" + std::to_string(table.cols) + " but shape needs " +
                    std::to_string(vocab.dim_));
  }
  const std::size_t rows = table.rows;
  std::vector<TTVector> out(rows);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> row(vocab.dim_);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < vocab.dim_; ++j) row[j] = table(i, j);
      out[i] = tt_svd(row, vocab.spec_);
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, rows));
  if (threads == 1) {
    work(0, rows);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (rows + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(std::min(rows, t * chunk), std::min(rows, (t + 1) * chunk));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < rows; ++i) vocab.insert(i, std::move(out[i]));
  return vocab;
}

void CompressedVocab::insert(TokenId id, TTVector tt) {
  total_params_ += param_count(tt);
  entries_.emplace(id, std::make_shared<const TTVector>(std::move(tt)));
}

void CompressedVocab::add_token(TokenId id, std::span<const double> embedding) {
  if (contains(id)) throw Error(ErrorCode::kDuplicateToken, "token " + std::to_string(id));
  if (embedding.size() != dim_) {
    throw Error(ErrorCode::kShapeMismatch, "embedding length " + std::to_string(embedding.size()) +
                                               ", store d=" + std::to_string(dim_));
  }
  insert(id, tt_svd(embedding, spec_));
}

void CompressedVocab::remove_token(TokenId id) {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw Error(ErrorCode::kTokenNotFound, "token " + std::to_string(id));
  total_params_ -= param_count(*it->second);
  entries_.erase(it);
}

const TTVector& CompressedVocab::entry(TokenId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw Error(ErrorCode::kTokenNotFound, "token " + std::to_string(id));
  return *it->second;
}

std::vector<double> CompressedVocab::lookup(TokenId id) const { return reconstruct(entry(id)); }

void CompressedVocab::lookup_into(TokenId id, std::span<double> out) const {
  reconstruct_into(entry(id), out);
}

std::vector<double> CompressedVocab::lookup_batch(std::span<const TokenId> ids) const {
  std::vector<double> out(ids.size() * dim_);
  for (std::size_t i = 0; i < ids.size(); ++i)
    lookup_into(ids[i], std::span<double>(out).subspan(i * dim_, dim_));
  return out;
}

std::vector<TokenId> CompressedVocab::ids() const {
  std::vector<TokenId> out;
  out.reserve(entries_.size());
  for (const auto& [id, tt] : entries_) out.push_back(id);
  return out;
}

double CompressedVocab::eta_emb() const {
  if (entries_.empty()) return 0.0;
  const double dense = static_cast<double>(dense_params());
  return (dense - static_cast<double>(total_params_)) / dense;
}

double CompressedVocab::eta() const {
  if (entries_.empty() || total_params_ == 0) return 0.0;
  return static_cast<double>(dense_params()) / static_cast<double>(total_params_) - 1.0;
}

std::vector<std::uint8_t> CompressedVocab::encode() const {
  const std::size_t n = spec_.shape.size();
  ByteWriter w;
  w.buffer().reserve(tte1_header_size(n) + entries_.size() * tte1_index_entry_size(n) +
                     total_params_ * 4 + 4);
  for (int i = 0; i < 4; ++i) w.u8(static_cast<std::uint8_t>(kMagic[i]));
  w.u16(kTte1Version);
  w.u32(static_cast<std::uint32_t>(dim_));
  w.u8(static_cast<std::uint8_t>(n));
  for (std::size_t v : spec_.shape) w.u32(static_cast<std::uint32_t>(v));
  w.f64(spec_.epsilon);
  w.u64(entries_.size());
  std::uint64_t offset = 0;
  for (const auto& [id, tt] : entries_) {
    w.u64(id);
    w.u64(offset);
    for (std::size_t r : tt->ranks) {
      if (r > std::numeric_limits<std::uint16_t>::max()) {
        throw Error(ErrorCode::kRankOutOfRange, "rank exceeds TTE1 u16 field");
      }
      w.u16(static_cast<std::uint16_t>(r));
    }
    offset += param_count(*tt) * 4;
  }
  for (const auto& [id, tt] : entries_)
    for (const Tensor& core : tt->cores)
      for (double v : core.data()) w.f32(static_cast<float>(v));
  append_crc(w);
  return std::move(w.buffer());
}

CompressedVocab CompressedVocab::decode(std::span<const std::uint8_t> bytes) {
  // Magic and version come first so a wrong version is reported as such even
  // when the checksum would also fail.
  ByteReader probe(bytes);
  read_header(probe);
  ByteReader r(verify_crc(bytes));
  const Tte1Header h = read_header(r);
  if (!std::isfinite(h.epsilon) || h.epsilon < 0.0) {
    throw Error(ErrorCode::kCorruptFile, "bad epsilon");
  }
  const std::size_t n = h.shape.size();
  if (h.count > r.remaining() / tte1_index_entry_size(n)) {
    throw Error(ErrorCode::kCorruptFile, "index larger than file");
  }
  struct Pending {
    TokenId id;
    std::vector<std::size_t> ranks;
  };
  std::vector<Pending> index;
  index.reserve(h.count);
  std::uint64_t expected_offset = 0;
  for (std::uint64_t e = 0; e < h.count; ++e) {
    Pending p;
    p.id = r.u64();
    const std::uint64_t offset = r.u64();
    p.ranks = read_ranks(r, h.shape);
    if (!index.empty() && p.id <= index.back().id) {
      throw Error(ErrorCode::kCorruptFile, "index not strictly ascending");
    }
    if (offset != expected_offset) throw Error(ErrorCode::kCorruptFile, "payload offset mismatch");
    expected_offset += param_count(h.shape, p.ranks) * 4;
    index.push_back(std::move(p));
  }
  if (r.remaining() != expected_offset) {
    throw Error(ErrorCode::kCorruptFile, "payload size does not match index");
  }
  CompressedVocab vocab(CompressSpec{h.shape, {}, h.epsilon});
  for (Pending& p : index) vocab.insert(p.id, read_cores(r, h.shape, p.ranks));
  return vocab;
}

void CompressedVocab::save(const std::string& path) const { write_file_atomic(path, encode()); }

CompressedVocab CompressedVocab::load(const std::string& path) { return decode(read_file(path)); }

void VocabHandle::update(const std::function<void(CompressedVocab&)>& edit) {
  std::lock_guard<std::mutex> writer(writer_mu_);
  auto next = std::make_shared<CompressedVocab>(*snapshot());
  edit(*next);
  std::lock_guard<std::mutex> lock(publish_mu_);
  current_ = std::move(next);
}

Tte1Reader::Tte1Reader(const std::string& path) : in_(path, std::ios::binary) {
  if (!in_) throw Error(ErrorCode::kIo, "cannot open " + path);
  auto read_exact = [&](std::size_t n) {
    std::vector<std::uint8_t> buf(n);
    in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw Error(ErrorCode::kCorruptFile, "truncated TTE1 file");
    }
    return buf;
  };
  // Fixed part first, then the shape-dependent rest of the header.
  auto head = read_exact(11);
  const std::size_t order = head[10];
  auto tail = read_exact(tte1_header_size(order) - 11);
  head.insert(head.end(), tail.begin(), tail.end());
  ByteReader hr(head);
  const Tte1Header h = read_header(hr);
  shape_ = h.shape;
  epsilon_ = h.epsilon;
  const std::size_t entry_size = tte1_index_entry_size(order);
  const auto index_bytes = read_exact(h.count * entry_size);
  ByteReader ir(index_bytes);
  for (std::uint64_t e = 0; e < h.count; ++e) {
    const TokenId id = ir.u64();
    IndexEntry entry;
    entry.offset = ir.u64();
    entry.ranks = read_ranks(ir, shape_);
    index_.emplace(id, std::move(entry));
  }
  payload_start_ = tte1_header_size(order) + h.count * entry_size;
}

TTVector Tte1Reader::read_entry(TokenId id) {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kTokenNotFound, "token " + std::to_string(id));
  const std::uint64_t bytes = param_count(shape_, it->second.ranks) * 4;
  std::vector<std::uint8_t> buf(bytes);
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(payload_start_ + it->second.offset));
  in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
  if (static_cast<std::uint64_t>(in_.gcount()) != bytes) {
    throw Error(ErrorCode::kCorruptFile, "truncated entry payload");
  }
  ByteReader r(buf);
  return read_cores(r, shape_, it->second.ranks);
}

}  // namespace ttemb
