#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tprim/index_set.hpp"
#include "tprim/pattern.hpp"

namespace tprim {

/// (n - 1)^2 + 1, the Wielandt ceiling on the primitive degree.
inline constexpr int wielandt_bound(int n) { return (n - 1) * (n - 1) + 1; }

/// The support-inclusion step S -> {u : some entry (u, i_2, ..., i_m) has all
/// tail indices in S}, packed once per tensor for the step kernels.
class StepOperator {
 public:
  StepOperator() = default;
  explicit StepOperator(const PatternTensor& t);
  explicit StepOperator(const CompressedSlices& slices);

  /// Rebuilds in place, reusing buffers.
  void assign(const CompressedSlices& slices);

  int dim() const { return dim_; }
  IndexSet operator()(IndexSet s) const;
  /// S_1(j) = column j of M(T); equal to one step from {j}.
  IndexSet initial(int j) const;

 private:
  int dim_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> supports_;
  std::vector<std::uint32_t> head_bits_;
};

IndexSet s_initial(const PatternTensor& t, int j);
IndexSet step(const PatternTensor& t, IndexSet s);

struct ReachedFull {
  int k;
  friend bool operator==(const ReachedFull&, const ReachedFull&) = default;
};
/// S_{start + length} == S_start, with S_1 .. S_{start + length - 1} distinct.
struct EnteredCycle {
  int start;
  int length;
  friend bool operator==(const EnteredCycle&, const EnteredCycle&) = default;
};
struct HitLimit {
  friend bool operator==(const HitLimit&, const HitLimit&) = default;
};
using Terminal = std::variant<ReachedFull, EnteredCycle, HitLimit>;

struct SSequenceTrace {
  int source = 0;
  /// states[0] is S_1. Recorded states are pairwise distinct.
  std::vector<IndexSet> states;
  Terminal terminal = HitLimit{};

  IndexSet state(int k) const { return states.at(static_cast<std::size_t>(k - 1)); }
};

/// Default iteration limit 2^n: [n] or a repeat is always seen by then.
SSequenceTrace s_sequence(const PatternTensor& t, int j, std::optional<long> limit = std::nullopt);
SSequenceTrace s_sequence(const StepOperator& op, int j, std::optional<long> limit = std::nullopt);

/// gamma_j, or the cycle that shows the tensor is not j-primitive.
struct JDegree {
  std::optional<int> value;
  std::optional<EnteredCycle> cycle;

  bool j_primitive() const { return value.has_value(); }
};

JDegree j_primitive_degree(const PatternTensor& t, int j);
JDegree j_primitive_degree(const StepOperator& op, int j);

struct DegreeReport {
  /// per_j[j - 1] holds gamma_j.
  std::vector<JDegree> per_j;
  std::optional<int> gamma;

  const JDegree& at(int j) const { return per_j.at(static_cast<std::size_t>(j - 1)); }
  bool primitive() const { return gamma.has_value(); }
  bool any_j_primitive() const;
};

/// gamma = max_j gamma_j when every j is j-primitive. Throws InvariantViolation
/// if a finite gamma exceeds wielandt_bound(n).
DegreeReport primitive_degree(const PatternTensor& t);
DegreeReport primitive_degree(const StepOperator& op);

/// Independent oracle: {u : M(T^k)(u, j) > 0} from the boolean recurrence
///   M(T^{k+1})(u, j) = OR over entries (u, i_2..i_m) of AND_t M(T^k)(i_t, j)
/// evaluated on raw entry tuples.
IndexSet majorization_power_column(const PatternTensor& t, int j, int k);

/// Second oracle for matrices: vertices reached from j by walks of length
/// exactly k in the reversed digraph of m.
IndexSet walk_column(const BoolMatrix& m, int j, int k);

}  // namespace tprim
