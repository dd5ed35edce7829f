#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tprim/index_set.hpp"
#include "tprim/pattern.hpp"

namespace tprim {

/// U(alpha) = {i : (i, alpha) is an entry} for a tail alpha of length m - 1.
IndexSet supplier_set(const PatternTensor& t, std::span<const int> tail);

/// Necessary condition for strong primitivity: U(alpha) nonempty for every
/// alpha in [n]^(m-1). On failure carries the lexicographically first empty tail.
struct PrecheckResult {
  bool passed = true;
  Tuple failing_tail;
};
PrecheckResult precheck(const PatternTensor& t);

/// Positional step: u is in the result iff some entry (u, i_2, ..., i_m) has
/// i_{p+1} in sets[p] for every p. Throws ArityMismatch unless sets.size() == m - 1.
IndexSet g_step(const PatternTensor& t, std::span<const IndexSet> sets);

/// Packed form of g_step for repeated use over one tensor.
class PositionalOperator {
 public:
  explicit PositionalOperator(const PatternTensor& t);

  int dim() const { return dim_; }
  std::size_t arity() const { return arity_; }
  IndexSet operator()(std::span<const IndexSet> sets) const;

 private:
  int dim_;
  std::size_t arity_;
  std::size_t count_;
  std::vector<std::uint32_t> head_bits_;
  std::vector<std::uint32_t> positions_;
};

/// Antichain of minimal index sets: the minimal zero-pattern column sets of
/// T^generation. Stored sorted by mask, which is also the canonical form.
class SetFamily {
 public:
  /// Generation 0: the n singletons.
  static SetFamily singletons(int n);
  /// Reduces `sets` to its minimal elements.
  static SetFamily from_sets(std::vector<IndexSet> sets, int generation);

  const std::vector<IndexSet>& sets() const { return sets_; }
  int generation() const { return generation_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  /// True iff the family is exactly {[n]}.
  bool is_full(int n) const { return sets_.size() == 1 && sets_.front().is_full(n); }

  friend bool operator==(const SetFamily& a, const SetFamily& b) { return a.sets_ == b.sets_; }

 private:
  std::vector<IndexSet> sets_;
  int generation_ = 0;
};

/// Minimal elements of a collection of sets, sorted by mask.
std::vector<IndexSet> minimal_antichain(std::vector<IndexSet> sets);

/// Minimal antichain of {g_step(tuple) : tuple in F^(m-1)}, generation + 1.
/// Throws EmptyFamily for an empty F.
SetFamily family_step(const PatternTensor& t, const SetFamily& family);
SetFamily family_step(const PositionalOperator& op, const SetFamily& family);

struct StrongReport {
  enum class Reason { None, PrecheckFailed, FamilyCycle, CapExhausted };

  std::optional<int> eta;
  Reason reason = Reason::None;
  Tuple failing_tail;          // PrecheckFailed
  int cycle_start = 0;         // FamilyCycle: generation first seen
  int cycle_length = 0;
  int generations_run = 0;

  bool strongly_primitive() const { return eta.has_value(); }
  /// CapExhausted is not a negative certificate.
  bool conclusive() const { return reason != Reason::CapExhausted; }
};

const char* to_string(StrongReport::Reason reason);

inline constexpr int kDefaultStrongCap = 512;

/// eta = least generation k >= 1 whose family is {[n]}. Throws BadLimit for cap < 1.
StrongReport strongly_primitive_degree(const PatternTensor& t, int cap = kDefaultStrongCap);

/// Literal zero pattern of T^k (k in {1, 2, 3}) as an order (m-1)^k + 1 tensor,
/// evaluated by the general tensor product sum over the boolean semiring.
/// Throws BadLimit for k outside {1, 2, 3}, TooLarge past 10^8 cells.
PatternTensor direct_power(const PatternTensor& t, int k);

}  // namespace tprim
