#include "tprim/dynamics.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "tprim/error.hpp"
#include "tprim/graph.hpp"
#include "tprim/kernels.hpp"

namespace tprim {

namespace {

void check_source(int j, int n) {
  if (j < 1 || j > n)
    throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(j) + " outside [1, " + std::to_string(n) + "]");
}

}  // namespace

StepOperator::StepOperator(const PatternTensor& t) : StepOperator(compress(t)) {}

StepOperator::StepOperator(const CompressedSlices& slices) { assign(slices); }

void StepOperator::assign(const CompressedSlices& slices) {
  dim_ = slices.dim;
  count_ = slices.slices.size();
  const std::size_t padded = (count_ + kernels::kLanes - 1) / kernels::kLanes * kernels::kLanes;
  supports_.assign(padded, ~std::uint32_t{0});
  head_bits_.assign(padded, 0);
  for (std::size_t p = 0; p < count_; ++p) {
    supports_[p] = slices.slices[p].support.mask();
    head_bits_[p] = IndexSet::single(slices.slices[p].head).mask();
  }
}

IndexSet StepOperator::operator()(IndexSet s) const {
  return IndexSet::from_mask(kernels::active().support_step(supports_.data(), head_bits_.data(), supports_.size(), s.mask()));
}

IndexSet StepOperator::initial(int j) const {
  check_source(j, dim_);
  return (*this)(IndexSet::single(j));
}

IndexSet s_initial(const PatternTensor& t, int j) {
  check_source(j, t.dim());
  return majorization(t).column(j);
}

IndexSet step(const PatternTensor& t, IndexSet s) { return StepOperator(t)(s); }

SSequenceTrace s_sequence(const PatternTensor& t, int j, std::optional<long> limit) {
  check_source(j, t.dim());
  return s_sequence(StepOperator(t), j, limit);
}

namespace {

// Visited-state table: direct-addressed for n <= 16, hashed above that. The
// direct table is thread-local and reset entry by entry after each walk.
class VisitedStates {
 public:
  explicit VisitedStates(int n) : direct_(n <= 16) {
    if (direct_) {
      auto& table = direct_table();
      if (table.size() < (std::size_t{1} << n)) table.assign(std::size_t{1} << n, 0);
    }
  }
  ~VisitedStates() {
    if (direct_) {
      auto& table = direct_table();
      for (auto s : touched_) table[s.mask()] = 0;
    }
  }
  VisitedStates(const VisitedStates&) = delete;
  VisitedStates& operator=(const VisitedStates&) = delete;

  /// Position at which s was first seen, or 0.
  int find(IndexSet s) const {
    if (direct_) return direct_table()[s.mask()];
    auto it = hashed_.find(s);
    return it == hashed_.end() ? 0 : it->second;
  }
  void insert(IndexSet s, int k) {
    if (direct_) {
      direct_table()[s.mask()] = k;
      touched_.push_back(s);
    } else {
      hashed_.emplace(s, k);
    }
  }

 private:
  static std::vector<int>& direct_table() {
    thread_local std::vector<int> table;
    return table;
  }

  bool direct_;
  std::vector<IndexSet> touched_;
  std::unordered_map<IndexSet, int> hashed_;
};

Terminal walk(const StepOperator& op, int j, long cap, std::vector<IndexSet>* states) {
  const int n = op.dim();
  VisitedStates seen(n);
  IndexSet s = op.initial(j);
  for (long k = 1; k <= cap; ++k) {
    if (int first = seen.find(s); first != 0) return EnteredCycle{first, static_cast<int>(k) - first};
    if (states) states->push_back(s);
    if (s.is_full(n)) return ReachedFull{static_cast<int>(k)};
    seen.insert(s, static_cast<int>(k));
    s = op(s);
  }
  return HitLimit{};
}

long default_limit(int n) { return 1L << n; }

}  // namespace

SSequenceTrace s_sequence(const StepOperator& op, int j, std::optional<long> limit) {
  check_source(j, op.dim());
  const long cap = limit.value_or(default_limit(op.dim()));
  if (cap < 1) throw Error(ErrorKind::BadLimit, "limit " + std::to_string(cap) + " < 1");
  SSequenceTrace trace;
  trace.source = j;
  trace.terminal = walk(op, j, cap, &trace.states);
  return trace;
}

JDegree j_primitive_degree(const PatternTensor& t, int j) {
  check_source(j, t.dim());
  return j_primitive_degree(StepOperator(t), j);
}

JDegree j_primitive_degree(const StepOperator& op, int j) {
  check_source(j, op.dim());
  JDegree out;
  Terminal terminal = walk(op, j, default_limit(op.dim()), nullptr);
  if (auto* full = std::get_if<ReachedFull>(&terminal)) {
    out.value = full->k;
  } else if (auto* cyc = std::get_if<EnteredCycle>(&terminal)) {
    out.cycle = *cyc;
  }
  return out;
}

bool DegreeReport::any_j_primitive() const {
  return std::any_of(per_j.begin(), per_j.end(), [](const JDegree& d) { return d.j_primitive(); });
}

DegreeReport primitive_degree(const PatternTensor& t) { return primitive_degree(StepOperator(t)); }

DegreeReport primitive_degree(const StepOperator& op) {
  const int n = op.dim();
  DegreeReport report;
  report.per_j.reserve(static_cast<std::size_t>(n));
  bool all = true;
  int gamma = 0;
  for (int j = 1; j <= n; ++j) {
    report.per_j.push_back(j_primitive_degree(op, j));
    const auto& d = report.per_j.back();
    if (d.value) {
      gamma = std::max(gamma, *d.value);
    } else {
      all = false;
    }
  }
  if (all) {
    if (gamma > wielandt_bound(n))
      throw Error(ErrorKind::InvariantViolation, "primitive degree " + std::to_string(gamma) +
                                                     " exceeds (n-1)^2+1 = " + std::to_string(wielandt_bound(n)));
    report.gamma = gamma;
  }
  return report;
}

IndexSet majorization_power_column(const PatternTensor& t, int j, int k) {
  const int n = t.dim();
  check_source(j, n);
  if (k < 1) throw Error(ErrorKind::BadLimit, "power " + std::to_string(k) + " < 1");
  const auto entries = t.tuples();
  // column[u - 1] == (M(T^power))_{u j} > 0
  std::vector<bool> column(static_cast<std::size_t>(n), false);
  for (const auto& e : entries) {
    bool diagonal = std::all_of(e.begin() + 1, e.end(), [j](int i) { return i == j; });
    if (diagonal) column[static_cast<std::size_t>(e[0] - 1)] = true;
  }
  for (int power = 1; power < k; ++power) {
    std::vector<bool> next(static_cast<std::size_t>(n), false);
    for (const auto& e : entries) {
      bool product = true;
      for (std::size_t p = 1; p < e.size() && product; ++p) product = column[static_cast<std::size_t>(e[p] - 1)];
      if (product) next[static_cast<std::size_t>(e[0] - 1)] = true;
    }
    column = std::move(next);
  }
  IndexSet out;
  for (int u = 1; u <= n; ++u)
    if (column[static_cast<std::size_t>(u - 1)]) out = out.with(u);
  return out;
}

IndexSet walk_column(const BoolMatrix& m, int j, int k) {
  return exact_length_reach(reverse(digraph_of(m)), j, k);
}

}  // namespace tprim
