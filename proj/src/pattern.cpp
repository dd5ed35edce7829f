#include "tprim/pattern.hpp"

#include <algorithm>

#include "tprim/error.hpp"

namespace tprim {

namespace {

constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 62;

void check_index(int i, int dim) {
  if (i < 1 || i > dim)
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside [1, " + std::to_string(dim) + "]");
}

}  // namespace

CellCodec::CellCodec(int order, int dim) : order_(order), dim_(dim), cells_(1), tails_(1) {
  if (order < 1) throw Error(ErrorKind::BadShape, "order " + std::to_string(order) + " < 1");
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::BadShape, "dimension " + std::to_string(dim) + " outside [1, 30]");
  for (int p = 0; p < order; ++p) {
    if (cells_ > kMaxCells / static_cast<std::uint64_t>(dim))
      throw Error(ErrorKind::TooLarge, "dim^order exceeds 2^62");
    cells_ *= static_cast<std::uint64_t>(dim);
    if (p > 0) tails_ *= static_cast<std::uint64_t>(dim);
  }
}

std::uint64_t CellCodec::encode(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != order_)
    throw Error(ErrorKind::ArityMismatch,
                "tuple of length " + std::to_string(tuple.size()) + " for order " + std::to_string(order_));
  std::uint64_t code = 0;
  for (int i : tuple) {
    check_index(i, dim_);
    code = code * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(i - 1);
  }
  return code;
}

Tuple CellCodec::decode(std::uint64_t code) const {
  Tuple t(static_cast<std::size_t>(order_));
  for (int p = order_ - 1; p >= 0; --p) {
    t[static_cast<std::size_t>(p)] = static_cast<int>(code % static_cast<std::uint64_t>(dim_)) + 1;
    code /= static_cast<std::uint64_t>(dim_);
  }
  return t;
}

IndexSet CellCodec::tail_support(std::uint64_t code) const {
  std::uint64_t tail = code % tails_;
  IndexSet s;
  for (int p = 1; p < order_; ++p) {
    s = s.with(static_cast<int>(tail % static_cast<std::uint64_t>(dim_)) + 1);
    tail /= static_cast<std::uint64_t>(dim_);
  }
  return s;
}

PatternTensor::PatternTensor(int order, int dim) : codec_(std::max(order, 1), std::clamp(dim, 1, kMaxDim)) {
  if (order < 2) throw Error(ErrorKind::BadShape, "order " + std::to_string(order) + " < 2");
  if (dim < 2 || dim > kMaxDim) throw Error(ErrorKind::BadShape, "dimension " + std::to_string(dim) + " outside [2, 30]");
}

PatternTensor PatternTensor::from_codes(int order, int dim, std::vector<std::uint64_t> codes) {
  PatternTensor t(order, dim);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  if (!codes.empty() && codes.back() >= t.codec_.cell_count())
    throw Error(ErrorKind::IndexOutOfRange, "cell code outside tensor");
  t.codes_ = std::move(codes);
  return t;
}

bool PatternTensor::contains(std::span<const int> tuple) const {
  return std::binary_search(codes_.begin(), codes_.end(), codec_.encode(tuple));
}

std::vector<Tuple> PatternTensor::tuples() const {
  std::vector<Tuple> out;
  out.reserve(codes_.size());
  for (auto c : codes_) out.push_back(codec_.decode(c));
  return out;
}

std::uint64_t PatternTensor::canonical_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(order()));
  mix(static_cast<std::uint64_t>(dim()));
  for (auto c : codes_) mix(c);
  return h;
}

PatternTensor make_pattern_tensor(int order, int dim, const std::vector<Tuple>& entries) {
  PatternTensor shape(order, dim);
  std::vector<std::uint64_t> codes;
  codes.reserve(entries.size());
  for (const auto& e : entries) codes.push_back(shape.codec().encode(e));
  return PatternTensor::from_codes(order, dim, std::move(codes));
}

PatternTensor all_ones_tensor(int order, int dim) {
  PatternTensor shape(order, dim);
  std::vector<std::uint64_t> codes(shape.codec().cell_count());
  for (std::uint64_t c = 0; c < codes.size(); ++c) codes[c] = c;
  return PatternTensor::from_codes(order, dim, std::move(codes));
}

BoolMatrix majorization(const PatternTensor& t) {
  BoolMatrix m(t.dim());
  const auto& codec = t.codec();
  for (auto c : t.codes()) {
    IndexSet s = codec.tail_support(c);
    if (s.size() == 1) m.set(codec.head(c), s.members().front());
  }
  return m;
}

std::vector<IndexSet> CompressedSlices::supports_of(int head) const {
  std::vector<IndexSet> out;
  for (const auto& s : slices)
    if (s.head == head) out.push_back(s.support);
  return out;
}

IndexSet CompressedSlices::nonempty_heads() const {
  IndexSet h;
  for (const auto& s : slices) h = h.with(s.head);
  return h;
}

CompressedSlices compress_codes(const CellCodec& codec, std::span<const std::uint64_t> codes) {
  CompressedSlices out;
  out.dim = codec.dim();
  out.slices.reserve(codes.size());
  for (auto c : codes) out.slices.push_back({codec.head(c), codec.tail_support(c)});
  std::sort(out.slices.begin(), out.slices.end());
  out.slices.erase(std::unique(out.slices.begin(), out.slices.end()), out.slices.end());
  return out;
}

CompressedSlices compress(const PatternTensor& t) { return compress_codes(t.codec(), t.codes()); }

bool column_nonzero_check(const PatternTensor& t, int j) {
  check_index(j, t.dim());
  return !majorization(t).column(j).without(j).empty();
}

PatternTensor diagonal_embed(const BoolMatrix& m, int order) {
  if (order < 2) throw Error(ErrorKind::BadShape, "order " + std::to_string(order) + " < 2");
  PatternTensor shape(order, m.dim());
  std::vector<std::uint64_t> codes;
  Tuple tuple(static_cast<std::size_t>(order));
  for (auto [i, j] : m.cells()) {
    tuple[0] = i;
    std::fill(tuple.begin() + 1, tuple.end(), j);
    codes.push_back(shape.codec().encode(tuple));
  }
  return PatternTensor::from_codes(order, m.dim(), std::move(codes));
}

PatternTensor matrix_tensor(const BoolMatrix& m) { return diagonal_embed(m, 2); }

std::string tuple_to_string(std::span<const int> tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(tuple[i]);
  }
  return s + ")";
}

std::string tensor_summary(const PatternTensor& t) {
  std::string s = "m=" + std::to_string(t.order()) + " n=" + std::to_string(t.dim()) + " entries=[";
  const std::size_t shown = std::min<std::size_t>(t.size(), 12);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) s += ',';
    s += tuple_to_string(t.tuple(i));
  }
  if (shown < t.size()) s += ",... (" + std::to_string(t.size()) + " total)";
  return s + "]";
}

}  // namespace tprim
