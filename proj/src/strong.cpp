#include "tprim/strong.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "tprim/error.hpp"
#include "tprim/kernels.hpp"

namespace tprim {

IndexSet supplier_set(const PatternTensor& t, std::span<const int> tail) {
  if (static_cast<int>(tail.size()) != t.order() - 1)
    throw Error(ErrorKind::ArityMismatch, "tail of length " + std::to_string(tail.size()) + " for order " +
                                              std::to_string(t.order()));
  Tuple full(tail.size() + 1);
  std::copy(tail.begin(), tail.end(), full.begin() + 1);
  IndexSet out;
  for (int i = 1; i <= t.dim(); ++i) {
    full[0] = i;
    if (t.contains(full)) out = out.with(i);
  }
  return out;
}

PrecheckResult precheck(const PatternTensor& t) {
  const auto& codec = t.codec();
  std::vector<std::uint64_t> tails;
  tails.reserve(t.size());
  for (auto c : t.codes()) tails.push_back(codec.tail_code(c));
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());

  std::uint64_t expected = 0;
  for (auto tail : tails) {
    if (tail != expected) break;
    ++expected;
  }
  if (expected == codec.tail_count()) return {};
  // Decode the missing tail by prefixing head 1.
  Tuple full = codec.decode(expected);
  return {false, Tuple(full.begin() + 1, full.end())};
}

PositionalOperator::PositionalOperator(const PatternTensor& t)
    : dim_(t.dim()), arity_(static_cast<std::size_t>(t.order() - 1)), count_(t.size()) {
  const std::size_t padded = (count_ + kernels::kLanes - 1) / kernels::kLanes * kernels::kLanes;
  head_bits_.assign(padded, 0);
  positions_.assign(padded * arity_, 0);
  for (std::size_t e = 0; e < count_; ++e) {
    Tuple tuple = t.tuple(e);
    head_bits_[e] = IndexSet::single(tuple[0]).mask();
    for (std::size_t p = 0; p < arity_; ++p) positions_[p * padded + e] = static_cast<std::uint32_t>(tuple[p + 1] - 1);
  }
  count_ = padded;
}

IndexSet PositionalOperator::operator()(std::span<const IndexSet> sets) const {
  if (sets.size() != arity_)
    throw Error(ErrorKind::ArityMismatch,
                std::to_string(sets.size()) + " sets for " + std::to_string(arity_) + " tail positions");
  std::uint32_t masks[64];
  std::vector<std::uint32_t> heap;
  std::uint32_t* m = masks;
  if (arity_ > 64) {
    heap.resize(arity_);
    m = heap.data();
  }
  for (std::size_t p = 0; p < arity_; ++p) m[p] = sets[p].mask();
  return IndexSet::from_mask(
      kernels::active().positional_step(head_bits_.data(), positions_.data(), count_, arity_, m));
}

IndexSet g_step(const PatternTensor& t, std::span<const IndexSet> sets) { return PositionalOperator(t)(sets); }

std::vector<IndexSet> minimal_antichain(std::vector<IndexSet> sets) {
  std::sort(sets.begin(), sets.end(), [](IndexSet a, IndexSet b) {
    return a.size() != b.size() ? a.size() < b.size() : a.mask() < b.mask();
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<IndexSet> kept;
  for (auto s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [s](IndexSet k) { return k.subset_of(s); });
    if (!dominated) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

SetFamily SetFamily::singletons(int n) {
  SetFamily f;
  for (int i = 1; i <= n; ++i) f.sets_.push_back(IndexSet::single(i));
  return f;
}

SetFamily SetFamily::from_sets(std::vector<IndexSet> sets, int generation) {
  SetFamily f;
  f.sets_ = minimal_antichain(std::move(sets));
  f.generation_ = generation;
  return f;
}

SetFamily family_step(const PatternTensor& t, const SetFamily& family) {
  return family_step(PositionalOperator(t), family);
}

SetFamily family_step(const PositionalOperator& op, const SetFamily& family) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "family_step on an empty family");
  const auto& members = family.sets();
  const std::size_t arity = op.arity();
  std::vector<std::size_t> odometer(arity, 0);
  std::vector<IndexSet> tuple(arity, members.front());
  std::vector<IndexSet> images;
  while (true) {
    images.push_back(op(tuple));
    std::size_t p = 0;
    for (; p < arity; ++p) {
      if (++odometer[p] < members.size()) {
        tuple[p] = members[odometer[p]];
        break;
      }
      odometer[p] = 0;
      tuple[p] = members.front();
    }
    if (p == arity) break;
  }
  return SetFamily::from_sets(std::move(images), family.generation() + 1);
}

const char* to_string(StrongReport::Reason reason) {
  switch (reason) {
    case StrongReport::Reason::None: return "none";
    case StrongReport::Reason::PrecheckFailed: return "precheck-failed";
    case StrongReport::Reason::FamilyCycle: return "family-cycle";
    case StrongReport::Reason::CapExhausted: return "cap-exhausted";
  }
  return "unknown";
}

StrongReport strongly_primitive_degree(const PatternTensor& t, int cap) {
  if (cap < 1) throw Error(ErrorKind::BadLimit, "cap " + std::to_string(cap) + " < 1");
  StrongReport report;
  if (auto pre = precheck(t); !pre.passed) {
    report.reason = StrongReport::Reason::PrecheckFailed;
    report.failing_tail = std::move(pre.failing_tail);
    return report;
  }
  PositionalOperator op(t);
  SetFamily family = SetFamily::singletons(t.dim());
  std::map<std::vector<IndexSet>, int> seen{{family.sets(), 0}};
  for (int k = 1; k <= cap; ++k) {
    family = family_step(op, family);
    report.generations_run = k;
    if (family.is_full(t.dim())) {
      report.eta = k;
      return report;
    }
    auto [it, inserted] = seen.emplace(family.sets(), k);
    if (!inserted) {
      report.reason = StrongReport::Reason::FamilyCycle;
      report.cycle_start = it->second;
      report.cycle_length = k - it->second;
      return report;
    }
  }
  report.reason = StrongReport::Reason::CapExhausted;
  return report;
}

PatternTensor direct_power(const PatternTensor& t, int k) {
  if (k < 1 || k > 3) throw Error(ErrorKind::BadLimit, "direct_power supports k in {1, 2, 3}, got " + std::to_string(k));
  const int m = t.order();
  const int n = t.dim();
  int final_order = 1;
  for (int i = 0; i < k; ++i) final_order *= (m - 1);
  final_order += 1;
  double cells = 1;
  for (int i = 0; i < final_order; ++i) cells *= n;
  if (cells > 1e8) throw Error(ErrorKind::TooLarge, "n^((m-1)^k+1) exceeds 10^8");
  if (k == 1) return t;

  const auto un = static_cast<std::uint64_t>(n);
  // Dense boolean tensor of A: dense_a[code].
  std::vector<std::uint8_t> dense_a(t.codec().cell_count(), 0);
  for (auto c : t.codes()) dense_a[c] = 1;
  const std::uint64_t tails_a = t.codec().tail_count();
  std::vector<std::uint8_t> power = dense_a;
  int power_order = m;

  for (int step = 2; step <= k; ++step) {
    const int tail_len = power_order - 1;       // length of each alpha_t
    std::uint64_t alpha_count = 1;              // n^tail_len
    for (int i = 0; i < tail_len; ++i) alpha_count *= un;
    const int out_order = (m - 1) * tail_len + 1;
    std::uint64_t out_tails = 1;
    for (int i = 0; i < out_order - 1; ++i) out_tails *= un;
    std::vector<std::uint8_t> out(un * out_tails, 0);

    std::vector<std::uint64_t> alpha(static_cast<std::size_t>(m - 1), 0);
    std::vector<int> mid(static_cast<std::size_t>(m - 1), 0);
    for (std::uint64_t out_tail = 0; out_tail < out_tails; ++out_tail) {
      // Split the result tail into alpha_1 .. alpha_{m-1}, most significant first.
      std::uint64_t rest = out_tail;
      for (int p = m - 2; p >= 0; --p) {
        alpha[static_cast<std::size_t>(p)] = rest % alpha_count;
        rest /= alpha_count;
      }
      for (int i = 0; i < n; ++i) {
        // d_{i alpha} = sum over i_2..i_m of a_{i i_2..i_m} b_{i_2 alpha_1} ... b_{i_m alpha_{m-1}}
        bool positive = false;
        for (std::uint64_t mid_code = 0; mid_code < tails_a && !positive; ++mid_code) {
          if (!dense_a[static_cast<std::uint64_t>(i) * tails_a + mid_code]) continue;
          std::uint64_t digits = mid_code;
          for (int p = m - 2; p >= 0; --p) {
            mid[static_cast<std::size_t>(p)] = static_cast<int>(digits % un);
            digits /= un;
          }
          bool all = true;
          for (std::size_t p = 0; p < mid.size() && all; ++p)
            all = power[static_cast<std::uint64_t>(mid[p]) * alpha_count + alpha[p]] != 0;
          positive = all;
        }
        if (positive) out[static_cast<std::uint64_t>(i) * out_tails + out_tail] = 1;
      }
    }
    power = std::move(out);
    power_order = out_order;
  }

  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < power.size(); ++c)
    if (power[c]) codes.push_back(c);
  return PatternTensor::from_codes(power_order, n, std::move(codes));
}

}  // namespace tprim
