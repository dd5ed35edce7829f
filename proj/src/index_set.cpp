#include "tprim/index_set.hpp"

#include "tprim/error.hpp"

namespace tprim {

IndexSet IndexSet::of(std::initializer_list<int> members) {
  IndexSet s;
  for (int i : members) s = s.with(i);
  return s;
}

IndexSet IndexSet::of(const std::vector<int>& members) {
  IndexSet s;
  for (int i : members) s = s.with(i);
  return s;
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : members()) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

BoolMatrix::BoolMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxDim)
    throw Error(ErrorKind::BadShape, "matrix dimension " + std::to_string(n) + " outside [1, 30]");
  rows_.assign(static_cast<std::size_t>(n), IndexSet{});
}

BoolMatrix BoolMatrix::identity(int n) {
  BoolMatrix m(n);
  for (int i = 1; i <= n; ++i) m.set(i, i);
  return m;
}

BoolMatrix BoolMatrix::all_ones(int n) {
  BoolMatrix m(n);
  for (auto& r : m.rows_) r = IndexSet::full(n);
  return m;
}

BoolMatrix BoolMatrix::from_cells(int n, const std::vector<std::pair<int, int>>& cells) {
  BoolMatrix m(n);
  for (auto [i, j] : cells) m.set(i, j);
  return m;
}

void BoolMatrix::check_index(int i) const {
  if (i < 1 || i > n_)
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside [1, " + std::to_string(n_) + "]");
}

bool BoolMatrix::at(int i, int j) const {
  check_index(i);
  check_index(j);
  return rows_[i - 1].contains(j);
}

void BoolMatrix::set(int i, int j, bool value) {
  check_index(i);
  check_index(j);
  auto& r = rows_[i - 1];
  r = value ? r.with(j) : r.without(j);
}

IndexSet BoolMatrix::row(int i) const {
  check_index(i);
  return rows_[i - 1];
}

IndexSet BoolMatrix::column(int j) const {
  check_index(j);
  IndexSet c;
  for (int i = 1; i <= n_; ++i)
    if (rows_[i - 1].contains(j)) c = c.with(i);
  return c;
}

BoolMatrix BoolMatrix::transpose() const {
  BoolMatrix t(n_);
  for (int i = 1; i <= n_; ++i) t.rows_[i - 1] = column(i);
  return t;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& rhs) const {
  if (rhs.n_ != n_) throw Error(ErrorKind::BadShape, "dimension mismatch in boolean product");
  BoolMatrix p(n_);
  for (int i = 0; i < n_; ++i) {
    IndexSet acc;
    for (int l : rows_[i].members()) acc = acc | rhs.rows_[l - 1];
    p.rows_[i] = acc;
  }
  return p;
}

bool BoolMatrix::all_positive() const {
  for (auto r : rows_)
    if (!r.is_full(n_)) return false;
  return true;
}

int BoolMatrix::count() const {
  int c = 0;
  for (auto r : rows_) c += r.size();
  return c;
}

std::vector<std::pair<int, int>> BoolMatrix::cells() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n_; ++i)
    for (int j : rows_[i - 1].members()) out.emplace_back(i, j);
  return out;
}

}  // namespace tprim
