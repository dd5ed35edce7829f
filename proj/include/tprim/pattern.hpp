#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tprim/index_set.hpp"

namespace tprim {

/// One entry position of an order-m tensor, 1-based: (i_1, i_2, ..., i_m).
using Tuple = std::vector<int>;

/// Mixed-radix encoding of index tuples. Codes order tuples lexicographically,
/// with i_1 the most significant digit, so code / n^(m-1) is the head index.
class CellCodec {
 public:
  /// Throws BadShape for order < 1 or dim outside [1, kMaxDim], TooLarge when
  /// dim^order does not fit in 62 bits.
  CellCodec(int order, int dim);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::uint64_t cell_count() const { return cells_; }
  std::uint64_t tail_count() const { return tails_; }

  std::uint64_t encode(std::span<const int> tuple) const;
  Tuple decode(std::uint64_t code) const;
  int head(std::uint64_t code) const { return static_cast<int>(code / tails_) + 1; }
  std::uint64_t tail_code(std::uint64_t code) const { return code % tails_; }
  /// Index set {i_2, ..., i_m} of the tail digits.
  IndexSet tail_support(std::uint64_t code) const;

 private:
  int order_;
  int dim_;
  std::uint64_t cells_;
  std::uint64_t tails_;
};

/// Zero-nonzero pattern of an order-m, dimension-n nonnegative tensor: the set
/// of index tuples whose entry is positive. Entries are kept as a sorted,
/// deduplicated list of cell codes, which doubles as the canonical form.
class PatternTensor {
 public:
  /// All-zero tensor. Throws BadShape unless order >= 2 and 2 <= dim <= kMaxDim.
  PatternTensor(int order, int dim);

  /// Takes arbitrary codes; sorts, deduplicates and range-checks them.
  static PatternTensor from_codes(int order, int dim, std::vector<std::uint64_t> codes);

  int order() const { return codec_.order(); }
  int dim() const { return codec_.dim(); }
  const CellCodec& codec() const { return codec_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  std::span<const std::uint64_t> codes() const { return codes_; }

  bool contains(std::span<const int> tuple) const;
  Tuple tuple(std::size_t entry) const { return codec_.decode(codes_[entry]); }
  std::vector<Tuple> tuples() const;

  /// 64-bit FNV-1a over (order, dim, codes).
  std::uint64_t canonical_hash() const;

  friend bool operator==(const PatternTensor& a, const PatternTensor& b) {
    return a.order() == b.order() && a.dim() == b.dim() && a.codes_ == b.codes_;
  }

 private:
  CellCodec codec_;
  std::vector<std::uint64_t> codes_;
};

/// Validating constructor from 1-based tuples. Errors: BadShape, ArityMismatch,
/// IndexOutOfRange. An empty entry list gives the all-zero tensor.
PatternTensor make_pattern_tensor(int order, int dim, const std::vector<Tuple>& entries);

PatternTensor all_ones_tensor(int order, int dim);

/// M(T): cell (i, j) is true iff (i, j, j, ..., j) is an entry.
BoolMatrix majorization(const PatternTensor& t);

/// A (head, tail support) pair.
struct Slice {
  int head;
  IndexSet support;
  friend auto operator<=>(const Slice&, const Slice&) = default;
};

/// Per-head deduplicated tail supports, sorted by (head, support mask).
/// Membership of every tail index in a set S depends only on the support, so
/// the S-dynamics step is computable from this alone.
struct CompressedSlices {
  int dim = 0;
  std::vector<Slice> slices;

  std::size_t total() const { return slices.size(); }
  std::vector<IndexSet> supports_of(int head) const;
  /// Heads with at least one entry.
  IndexSet nonempty_heads() const;
};

CompressedSlices compress(const PatternTensor& t);
/// Same as compress, straight from cell codes (explorer hot path).
CompressedSlices compress_codes(const CellCodec& codec, std::span<const std::uint64_t> codes);

/// True iff some i != j has M(T)(i, j) positive. False for any j certifies
/// that T is not primitive.
bool column_nonzero_check(const PatternTensor& t, int j);

/// Tensor with entry (i, j, ..., j) exactly where M(i, j) is true.
PatternTensor diagonal_embed(const BoolMatrix& m, int order);

/// Order-2 tensor of a matrix (diagonal_embed with order 2).
PatternTensor matrix_tensor(const BoolMatrix& m);

std::string tuple_to_string(std::span<const int> tuple);

/// "m=3 n=4 entries=[(1,2,2),...]", truncated after 12 entries.
std::string tensor_summary(const PatternTensor& t);

}  // namespace tprim
