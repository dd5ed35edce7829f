#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace tprim {

/// Largest supported dimension; an IndexSet over [n] fits in one 32-bit word.
inline constexpr int kMaxDim = 30;

/// A subset of [n] = {1, ..., n}. Index i is stored in bit i - 1.
class IndexSet {
 public:
  constexpr IndexSet() = default;

  static constexpr IndexSet from_mask(std::uint32_t mask) { return IndexSet(mask); }
  static constexpr IndexSet full(int n) {
    return IndexSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1u);
  }
  static constexpr IndexSet single(int i) { return IndexSet(std::uint32_t{1} << (i - 1)); }
  static IndexSet of(std::initializer_list<int> members);
  static IndexSet of(const std::vector<int>& members);

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool subset_of(IndexSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool is_full(int n) const { return mask_ == full(n).mask_; }

  constexpr IndexSet with(int i) const { return IndexSet(mask_ | (std::uint32_t{1} << (i - 1))); }
  constexpr IndexSet without(int i) const { return IndexSet(mask_ & ~(std::uint32_t{1} << (i - 1))); }

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.mask_ | b.mask_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.mask_ & b.mask_); }
  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
  friend constexpr auto operator<=>(IndexSet a, IndexSet b) = default;

  /// Members in ascending order, 1-based.
  std::vector<int> members() const;
  /// "{1,2,5}"
  std::string to_string() const;

 private:
  constexpr explicit IndexSet(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

/// Square boolean matrix; cell (i, j) is true iff the represented entry is positive.
/// Rows are stored as IndexSets over the column indices.
class BoolMatrix {
 public:
  /// All-false n x n matrix. Throws BadShape unless 1 <= n <= kMaxDim.
  explicit BoolMatrix(int n);

  static BoolMatrix identity(int n);
  static BoolMatrix all_ones(int n);
  static BoolMatrix from_cells(int n, const std::vector<std::pair<int, int>>& cells);

  int dim() const { return n_; }
  bool at(int i, int j) const;
  void set(int i, int j, bool value = true);

  IndexSet row(int i) const;
  IndexSet column(int j) const;
  BoolMatrix transpose() const;
  /// Boolean product (OR of ANDs).
  BoolMatrix operator*(const BoolMatrix& rhs) const;
  bool all_positive() const;
  int count() const;
  /// Positive cells in row-major order, 1-based.
  std::vector<std::pair<int, int>> cells() const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  void check_index(int i) const;

  int n_;
  std::vector<IndexSet> rows_;
};

}  // namespace tprim

template <>
struct std::hash<tprim::IndexSet> {
  std::size_t operator()(tprim::IndexSet s) const noexcept { return std::hash<std::uint32_t>{}(s.mask()); }
};
