#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "tprim/constructions.hpp"
#include "tprim/dynamics.hpp"
#include "tprim/explore.hpp"
#include "tprim/graph.hpp"

using namespace tprim;

namespace {

/// Hand-rolled generator for shapes, patterns and subsets.
struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int between(int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double unit() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

  PatternTensor pattern(int m, int n) {
    // Mix sparse, medium and dense patterns.
    const double density = std::array<double, 4>{0.08, 0.2, 0.4, 0.7}[rng() % 4];
    return oracle::random_pattern(rng, m, n, density);
  }
  PatternTensor pattern() {
    const int m = between(2, 4);
    const int n = between(2, m == 4 ? 4 : 6);
    return pattern(m, n);
  }
  IndexSet subset(int n) { return IndexSet::from_mask(static_cast<std::uint32_t>(rng()) & IndexSet::full(n).mask()); }
  BoolMatrix matrix(int n) {
    BoolMatrix m(n);
    const double p = 0.1 + 0.5 * unit();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (unit() < p) m.set(i, j);
    return m;
  }
};

constexpr int kTrials = 400;

}  // namespace

TEST_CASE("step is monotone") {
  Gen g(101);
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    auto s = g.subset(t.dim());
    auto bigger = s | g.subset(t.dim());
    CHECK(step(t, s).subset_of(step(t, bigger)));
  }
}

TEST_CASE("diagonal embeddings follow the matrix dynamics") {
  Gen g(102);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = g.between(2, 6);
    auto mat = g.matrix(n);
    auto base = matrix_tensor(mat);
    for (int m = 3; m <= 5; ++m) {
      auto t = diagonal_embed(mat, m);
      for (int j = 1; j <= n; ++j) {
        IndexSet a = s_initial(t, j), b = s_initial(base, j);
        for (int k = 1; k <= (1 << n); ++k) {
          CHECK(a == b);
          a = step(t, a);
          b = step(base, b);
        }
      }
    }
  }
}

TEST_CASE("equal states have equal successors") {
  Gen g(103);
  int collisions = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    const int n = t.dim();
    std::vector<std::vector<IndexSet>> runs;
    for (int j = 1; j <= n; ++j) {
      std::vector<IndexSet> run;
      IndexSet s = s_initial(t, j);
      for (int k = 1; k <= 2 * n + 2; ++k) {
        run.push_back(s);
        s = step(t, s);
      }
      runs.push_back(std::move(run));
    }
    for (std::size_t i = 0; i < runs.size(); ++i)
      for (std::size_t j = 0; j < runs.size(); ++j)
        for (std::size_t k = 0; k + 1 < runs[i].size(); ++k)
          for (std::size_t l = 0; l + 1 < runs[j].size(); ++l)
            if (runs[i][k] == runs[j][l] && (i != j || k != l)) {
              ++collisions;
              CHECK(runs[i][k + 1] == runs[j][l + 1]);
            }
  }
  CHECK(collisions > 0);
}

TEST_CASE("traces are consistent") {
  Gen g(104);
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    const int n = t.dim();
    const int j = g.between(1, n);
    auto tr = s_sequence(t, j);
    REQUIRE_FALSE(tr.states.empty());
    CHECK(tr.states.front() == s_initial(t, j));
    for (std::size_t k = 1; k < tr.states.size(); ++k) CHECK(tr.states[k] == step(t, tr.states[k - 1]));
    CHECK_FALSE(std::holds_alternative<HitLimit>(tr.terminal));
    if (auto* full = std::get_if<ReachedFull>(&tr.terminal)) {
      CHECK(tr.state(full->k).is_full(n));
      for (int k = 1; k < full->k; ++k) CHECK_FALSE(tr.state(k).is_full(n));
    }
    if (auto* cyc = std::get_if<EnteredCycle>(&tr.terminal)) {
      const auto& last = tr.states.back();
      CHECK(step(t, last) == tr.state(cyc->start));
      CHECK(cyc->start + cyc->length - 1 == static_cast<int>(tr.states.size()));
    }
  }
}

TEST_CASE("degree report consistency") {
  Gen g(105);
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    const int n = t.dim();
    auto deg = primitive_degree(t);
    bool all = true;
    int mx = 0;
    for (int j = 1; j <= n; ++j) {
      const auto& d = deg.at(j);
      all = all && d.j_primitive();
      if (d.value) {
        mx = std::max(mx, *d.value);
        CHECK(*d.value <= (1 << n) - 1);
      }
    }
    CHECK(deg.gamma.has_value() == all);
    if (deg.gamma) {
      CHECK(*deg.gamma == mx);
      CHECK(*deg.gamma <= wielandt_bound(n));
      CHECK_FALSE(is_reducible_tensor(t).reducible);
    }
    // With every head slice nonempty, [n] is absorbing and gamma is the
    // first power whose every column is full.
    if (compress(t).nonempty_heads().is_full(n)) {
      std::optional<int> first;
      for (int r = 1; r <= wielandt_bound(n) && !first; ++r) {
        bool full = true;
        for (int j = 1; j <= n && full; ++j) full = majorization_power_column(t, j, r).is_full(n);
        if (full) first = r;
      }
      CHECK(first == deg.gamma);
    }
  }
}

TEST_CASE("full state is absorbing when every head slice is nonempty") {
  Gen g(106);
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    const int n = t.dim();
    const bool heads = compress(t).nonempty_heads().is_full(n);
    CHECK((step(t, IndexSet::full(n)) == IndexSet::full(n)) == heads);
    // Reaching [n] at all already forces every head to be nonempty.
    for (int j = 1; j <= n; ++j)
      if (j_primitive_degree(t, j).j_primitive()) CHECK(heads);
  }
}

TEST_CASE("lift closure") {
  Gen g(107);
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    auto a = classify(t);
    auto b = classify(order_lift(t));
    CHECK(a.primitive == b.primitive);
    CHECK(a.degrees.gamma == b.degrees.gamma);
    for (int j = 1; j <= t.dim(); ++j) CHECK(a.degrees.at(j).value == b.degrees.at(j).value);
  }
}

TEST_CASE("gap intervals are disjoint, sorted and below the maximum") {
  Gen g(108);
  for (int trial = 0; trial < kTrials; ++trial) {
    std::map<int, std::uint64_t> achieved;
    const int count = g.between(0, 12);
    for (int i = 0; i < count; ++i) achieved[g.between(1, 40)] += 1;
    auto gaps = find_gaps(achieved);
    int prev_hi = -1;
    for (auto [lo, hi] : gaps) {
      CHECK(lo <= hi);
      CHECK(lo > prev_hi + 1);
      CHECK(hi < achieved.rbegin()->first);
      for (int x = lo; x <= hi; ++x) CHECK_FALSE(achieved.contains(x));
      CHECK(achieved.contains(hi + 1));
      prev_hi = hi;
    }
    // Everything below the maximum is either achieved or in a gap.
    if (!achieved.empty())
      for (int x = 1; x < achieved.rbegin()->first; ++x) {
        bool in_gap = false;
        for (auto [lo, hi] : gaps) in_gap = in_gap || (lo <= x && x <= hi);
        CHECK((achieved.contains(x) != in_gap));
      }
  }
}

TEST_CASE("classification flags match their degrees") {
  Gen g(109);
  for (int trial = 0; trial < kTrials; ++trial) {
    auto t = g.pattern();
    auto c = classify(t);
    CHECK(c.primitive == c.degrees.gamma.has_value());
    if (c.primitive) {
      CHECK(c.any_j_primitive());
      CHECK(c.irreducible == true);
    }
    CHECK(c.id == t.canonical_hash());
  }
}
