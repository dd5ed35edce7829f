#include "tprim/constructions.hpp"

#include <algorithm>
#include <string>

#include "tprim/dynamics.hpp"
#include "tprim/error.hpp"

namespace tprim {

namespace {

void require(bool ok, ErrorKind kind, const std::string& message) {
  if (!ok) throw Error(kind, message);
}

// All tuples of the given length over `support` that use every member.
std::vector<Tuple> tails_with_support(IndexSet support, int length) {
  const auto members = support.members();
  std::vector<Tuple> out;
  if (members.empty()) return out;
  Tuple tuple(static_cast<std::size_t>(length), members.front());
  std::vector<std::size_t> digit(static_cast<std::size_t>(length), 0);
  while (true) {
    if (IndexSet::of(tuple) == support) out.push_back(tuple);
    std::size_t p = digit.size();
    while (p > 0) {
      --p;
      if (++digit[p] < members.size()) {
        tuple[p] = members[digit[p]];
        break;
      }
      digit[p] = 0;
      tuple[p] = members.front();
      if (p == 0) return out;
    }
  }
}

void add_with_tails(std::vector<Tuple>& entries, IndexSet heads, const std::vector<Tuple>& tails) {
  for (int i : heads.members()) {
    for (const auto& tail : tails) {
      Tuple e{i};
      e.insert(e.end(), tail.begin(), tail.end());
      entries.push_back(std::move(e));
    }
  }
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

ResidueIndex::ResidueIndex(long a, int n) {
  require(n >= 1, ErrorKind::BadShape, "modulus must be positive");
  long r = ((a - 1) % n + n) % n;
  value_ = static_cast<int>(r) + 1;
}

KDecomposition KDecomposition::of(int k, int n) {
  require(n >= 2, ErrorKind::BadShape, "n must be >= 2");
  require(k >= 1, ErrorKind::KOutOfRange, "k must be >= 1");
  int q = (k - 1) / (n - 1);
  return {k, q, k - (n - 1) * q};
}

BoolMatrix wielandt_matrix(int n) {
  require(n >= 2, ErrorKind::BadShape, "wielandt_matrix needs n >= 2");
  if (n == 2) return BoolMatrix::from_cells(2, {{1, 1}, {1, 2}, {2, 1}});
  BoolMatrix m(n);
  m.set(1, n - 1);
  m.set(1, n);
  for (int i = 2; i <= n - 1; ++i) m.set(i, i - 1);
  m.set(n, n - 1);
  return m;
}

PatternTensor tensor_a0(int m, int n) {
  require(m >= 2, ErrorKind::BadShape, "order must be >= 2");
  return diagonal_embed(wielandt_matrix(n), m);
}

PatternTensor tensor_ak(int m, int n, int k) {
  require(m >= 3, ErrorKind::BadShape, "tensor_ak needs order >= 3");
  require(n >= 3, ErrorKind::BadShape, "tensor_ak needs n >= 3");
  require(k >= 1 && k <= max_ak_index(n), ErrorKind::KOutOfRange,
          "k = " + std::to_string(k) + " outside [1, " + std::to_string(max_ak_index(n)) + "]");
  const auto [kk, q, r] = KDecomposition::of(k, n);

  IndexSet excluded;
  for (int v = r - q; v <= r + 1; ++v) excluded = excluded.with(ResidueIndex(v, n));
  const IndexSet heads = IndexSet::from_mask(IndexSet::full(n).mask() & ~excluded.mask());
  const IndexSet support = IndexSet::of({ResidueIndex(r - q - 1, n), ResidueIndex(r, n)});

  std::vector<Tuple> entries = tensor_a0(m, n).tuples();
  add_with_tails(entries, heads, tails_with_support(support, m - 1));
  return make_pattern_tensor(m, n, entries);
}

BoolMatrix exponent_t_matrix(int n, int t) {
  require(n >= 2, ErrorKind::BadShape, "exponent_t_matrix needs n >= 2");
  require(t >= 1 && t <= n, ErrorKind::TOutOfRange, "t = " + std::to_string(t) + " outside [1, n]");
  BoolMatrix a(n);
  if (t == 1) {
    a = BoolMatrix::all_ones(n);
  } else {
    for (int i = 1; i < t; ++i) a.set(i, i + 1);
    for (int i = t; i <= n; ++i)
      for (int j = 1; j <= n; ++j) a.set(i, j);
  }
  auto gamma = primitive_degree(matrix_tensor(a)).gamma;
  if (gamma != t)
    throw Error(ErrorKind::SelfCheckFailed, "exponent_t_matrix(" + std::to_string(n) + ", " + std::to_string(t) +
                                                ") has exponent " + (gamma ? std::to_string(*gamma) : "none"));
  return a;
}

PatternTensor tensor_bt(int m, int n, int t) {
  require(m >= 3, ErrorKind::BadShape, "tensor_bt needs order >= 3");
  require(n >= 2, ErrorKind::BadShape, "tensor_bt needs n >= 2");
  require(t >= 1 && t <= wielandt_bound(n), ErrorKind::TOutOfRange,
          "t = " + std::to_string(t) + " outside [1, " + std::to_string(wielandt_bound(n)) + "]");
  if (t <= n) return diagonal_embed(exponent_t_matrix(n, t), m);
  return tensor_ak(m, n, t - n);
}

BoolMatrix m2_matrix(int n) {
  require(n >= 4, ErrorKind::BadShape, "m2_matrix needs n >= 4");
  BoolMatrix a(n);
  for (int i = 1; i <= n - 3; ++i) a.set(i, i + 1);
  a.set(n - 2, 1);
  a.set(n - 2, n - 1);
  a.set(n - 1, 1);
  a.set(n, n - 1);
  return a;
}

PatternTensor chain_tensor(int m, int n) {
  require(n >= 3, ErrorKind::BadShape, "chain_tensor needs n >= 3");
  const int h = (n - 1) / 2;
  if (m < h + 1)
    throw Error(ErrorKind::OrderTooSmall,
                "chain_tensor(" + std::to_string(m) + ", " + std::to_string(n) + ") needs order >= " + std::to_string(h + 1));

  // Size-h subsets of {2..n}, lexicographic on sorted members.
  std::vector<IndexSet> subsets;
  std::vector<int> pick(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) pick[static_cast<std::size_t>(i)] = i + 2;
  while (true) {
    subsets.push_back(IndexSet::of(pick));
    int p = h - 1;
    while (p >= 0 && pick[static_cast<std::size_t>(p)] == n - (h - 1 - p)) --p;
    if (p < 0) break;
    ++pick[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < h; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
  }
  const std::size_t k = subsets.size();
  if (k != binomial(n - 1, h)) throw Error(ErrorKind::SelfCheckFailed, "subset enumeration miscounted");

  std::vector<Tuple> entries;
  add_with_tails(entries, subsets[0], {Tuple(static_cast<std::size_t>(m - 1), 1)});
  for (std::size_t j = 0; j + 1 < k; ++j) add_with_tails(entries, subsets[j + 1], tails_with_support(subsets[j], m - 1));
  add_with_tails(entries, IndexSet::full(n), tails_with_support(subsets[k - 1], m - 1));
  return make_pattern_tensor(m, n, entries);
}

PatternTensor order_lift(const PatternTensor& t) {
  const int m = t.order();
  PatternTensor lifted(m + 1, t.dim());
  std::vector<std::uint64_t> codes;
  codes.reserve(t.size());
  const auto n = static_cast<std::uint64_t>(t.dim());
  for (auto c : t.codes()) codes.push_back(c * n + c % n);  // append a copy of i_m
  return PatternTensor::from_codes(m + 1, t.dim(), std::move(codes));
}

PatternTensor example_415() {
  const std::vector<Tuple> zeros{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {2, 3, 3}, {3, 1, 1}};
  std::vector<Tuple> entries;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) {
        Tuple e{a, b, c};
        if (std::find(zeros.begin(), zeros.end(), e) == zeros.end()) entries.push_back(e);
      }
  return make_pattern_tensor(3, 3, entries);
}

}  // namespace tprim
