#include "tprim/verify.hpp"

#include <chrono>
#include <random>
#include <set>

#include "tprim/constructions.hpp"
#include "tprim/dynamics.hpp"
#include "tprim/error.hpp"
#include "tprim/explore.hpp"
#include "tprim/strong.hpp"

namespace tprim {

IntRange IntRange::parse(const std::string& text) {
  auto number = [&text](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::BadShape, "bad range '" + text + "'");
    return v;
  };
  IntRange r;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  } else {
    r.lo = r.hi = number(text);
  }
  if (r.lo > r.hi) throw Error(ErrorKind::BadShape, "empty range '" + text + "'");
  return r;
}

std::string VerifyFailure::to_string() const {
  std::string s = "(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                  ", j=" + std::to_string(j) + ") " + what;
  if (!expected.empty() || !actual.empty()) s += ": expected " + expected + ", actual " + actual;
  return s;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"a0", "ak", "exponent-set", "m2", "chain", "lift", "oracles"};
  return names;
}

namespace {

std::string show(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); }

struct Suite {
  SuiteResult result;

  void expect(bool ok, VerifyFailure f) {
    ++result.checks;
    if (!ok) result.failures.push_back(std::move(f));
  }
  void expect_eq(const std::optional<int>& actual, int expected, VerifyFailure f) {
    f.expected = std::to_string(expected);
    f.actual = show(actual);
    expect(actual == expected, std::move(f));
  }
};

IntRange pick(const std::optional<IntRange>& given, IntRange fallback, IntRange allowed, const char* what) {
  IntRange r = given.value_or(fallback);
  if (r.lo < allowed.lo || r.hi > allowed.hi)
    throw Error(ErrorKind::BadShape, std::string(what) + " range must lie in [" + std::to_string(allowed.lo) + ", " +
                                         std::to_string(allowed.hi) + "]");
  return r;
}

void suite_a0(Suite& s, const VerifyOptions& o) {
  const IntRange ms = pick(o.m, {3, 4}, {3, 8}, "m");
  const IntRange ns = pick(o.n, {3, 7}, {3, 12}, "n");
  for (int m = ms.lo; m <= ms.hi; ++m) {
    for (int n = ns.lo; n <= ns.hi; ++n) {
      const PatternTensor a0 = tensor_a0(m, n);
      const StepOperator op(a0);
      const auto deg = primitive_degree(op);
      s.expect_eq(deg.gamma, wielandt_bound(n), {m, n, 0, 0, "gamma(A_0)", {}, {}});
      s.expect_eq(deg.at(n - 1).value, n * n - 3 * n + 3, {m, n, 0, n - 1, "gamma_{n-1}(A_0)", {}, {}});
      if (n < 4) continue;
      // S_k(A_0, n-1) as the cyclic run |r-q-1|, ..., |r| for k = (n-1)q + r.
      const auto trace = s_sequence(op, n - 1);
      const int last = max_ak_index(n);
      std::set<std::uint32_t> seen;
      for (int k = 1; k <= last; ++k) {
        const auto d = KDecomposition::of(k, n);
        IndexSet expected;
        for (int a = d.r - d.q - 1; a <= d.r; ++a) expected = expected.with(ResidueIndex(a, n));
        const IndexSet actual = k <= static_cast<int>(trace.states.size()) ? trace.state(k) : IndexSet{};
        s.expect(actual == expected, {m, n, k, n - 1, "S_k(A_0, n-1)", expected.to_string(), actual.to_string()});
        s.expect(actual.size() == d.q + 2,
                 {m, n, k, n - 1, "|S_k|", std::to_string(d.q + 2), std::to_string(actual.size())});
        s.expect(seen.insert(actual.mask()).second, {m, n, k, n - 1, "S_k repeats an earlier state", {}, {}});
      }
      const IndexSet tail = last <= static_cast<int>(trace.states.size()) ? trace.state(last) : IndexSet{};
      s.expect(tail == IndexSet::full(n - 1),
               {m, n, last, n - 1, "S_{n^2-3n+2}", IndexSet::full(n - 1).to_string(), tail.to_string()});
    }
  }
}

void suite_ak(Suite& s, const VerifyOptions& o) {
  const IntRange ms = pick(o.m, {3, 4}, {3, 8}, "m");
  const IntRange ns = pick(o.n, {4, 6}, {3, 10}, "n");
  for (int m = ms.lo; m <= ms.hi; ++m) {
    for (int n = ns.lo; n <= ns.hi; ++n) {
      for (int k = 1; k <= max_ak_index(n); ++k) {
        const auto deg = primitive_degree(tensor_ak(m, n, k));
        s.expect_eq(deg.gamma, k + n, {m, n, k, 0, "gamma(A_k)", {}, {}});
        // Column 0 is column n.
        for (int j = 0; j <= n - 1; ++j)
          s.expect_eq(deg.at(j == 0 ? n : j).value, k + n - j, {m, n, k, j, "gamma_j(A_k)", {}, {}});
      }
    }
  }
}

void suite_exponent_set(Suite& s, const VerifyOptions& o) {
  const IntRange ms = pick(o.m, {3, 4}, {3, 8}, "m");
  const IntRange ns = pick(o.n, {4, 5}, {2, 10}, "n");
  for (int m = ms.lo; m <= ms.hi; ++m) {
    for (int n = ns.lo; n <= ns.hi; ++n) {
      const auto report = exponent_scan(m, n);
      for (const auto& v : report.violations) s.expect(false, {m, n, 0, 0, v, {}, {}});
      s.expect(report.gaps.empty() && report.max_achieved() == wielandt_bound(n),
               {m, n, 0, 0, "exponent set", "[1, " + std::to_string(wielandt_bound(n)) + "]",
                std::to_string(report.achieved.size()) + " values, max " + show(report.max_achieved())});
    }
  }
}

void suite_m2(Suite& s, const VerifyOptions& o) {
  const IntRange ns = pick(o.n, {5, 7}, {4, 30}, "n");
  for (int n = ns.lo; n <= ns.hi; ++n) {
    const auto deg = primitive_degree(matrix_tensor(m2_matrix(n)));
    s.expect(!deg.primitive(), {2, n, 0, 0, "M_2 primitivity", "not primitive", "primitive"});
    s.expect_eq(deg.at(n - 1).value, n * n - 4 * n + 6, {2, n, 0, n - 1, "gamma_{n-1}(M_2)", {}, {}});
  }
}

std::uint64_t binomial(int a, int b) {
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
  return r;
}

void suite_chain(Suite& s, const VerifyOptions& o) {
  const IntRange ms = pick(o.m, {3, 4}, {2, 10}, "m");
  const IntRange ns = pick(o.n, {5, 7}, {3, 12}, "n");
  for (int m = ms.lo; m <= ms.hi; ++m) {
    for (int n = ns.lo; n <= ns.hi; ++n) {
      const int h = (n - 1) / 2;
      if (m < h + 1) continue;
      const auto deg = primitive_degree(chain_tensor(m, n));
      s.expect(!deg.primitive(), {m, n, 0, 0, "chain primitivity", "not primitive", "primitive"});
      s.expect_eq(deg.at(1).value, static_cast<int>(binomial(n - 1, h)) + 1, {m, n, 0, 1, "gamma_1(chain)", {}, {}});
    }
  }
}

/// Sizes drawn from the suite's (m, n) ranges with one seeded generator.
struct ShapeDraw {
  std::mt19937_64 rng;
  IntRange ms, ns;

  std::pair<int, int> next() {
    const int m = ms.lo + static_cast<int>(rng() % static_cast<std::uint64_t>(ms.hi - ms.lo + 1));
    const int n = ns.lo + static_cast<int>(rng() % static_cast<std::uint64_t>(ns.hi - ns.lo + 1));
    return {m, n};
  }
  double density() { return 0.05 + 0.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53; }
};

void suite_lift(Suite& s, const VerifyOptions& o) {
  const IntRange ms = pick(o.m, {3, 3}, {2, 6}, "m");
  const IntRange ns = pick(o.n, {2, 5}, {2, 8}, "n");
  ShapeDraw draw{std::mt19937_64(o.seed), ms, ns};
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    const auto [m, n] = draw.next();
    PatternSampler sampler(m, n, draw.rng(), draw.density());
    const PatternTensor t = sampler.next();
    const auto before = primitive_degree(t);
    const auto after = primitive_degree(order_lift(t));
    const int sample = static_cast<int>(i);
    s.expect(before.primitive() == after.primitive(),
             {m, n, sample, 0, "primitivity after lift", before.primitive() ? "primitive" : "not primitive",
              after.primitive() ? "primitive" : "not primitive"});
    if (before.gamma != after.gamma)
      s.expect(false, {m, n, sample, 0, "gamma after lift", show(before.gamma), show(after.gamma)});
    for (int j = 1; j <= n; ++j)
      if (before.at(j).value != after.at(j).value)
        s.expect(false, {m, n, sample, j, "gamma_j after lift", show(before.at(j).value), show(after.at(j).value)});
  }
}

/// Family generation without antichain pruning: every tuple over every set.
std::vector<IndexSet> unpruned_step(const PositionalOperator& op, const std::vector<IndexSet>& family) {
  const std::size_t arity = op.arity();
  std::set<std::uint32_t> out;
  std::vector<std::size_t> pick(arity, 0);
  std::vector<IndexSet> sets(arity);
  while (true) {
    for (std::size_t p = 0; p < arity; ++p) sets[p] = family[pick[p]];
    out.insert(op(sets).mask());
    std::size_t p = 0;
    while (p < arity && ++pick[p] == family.size()) pick[p++] = 0;
    if (p == arity) break;
  }
  std::vector<IndexSet> result;
  for (auto mask : out) result.push_back(IndexSet::from_mask(mask));
  return result;
}

void suite_oracles(Suite& s, const VerifyOptions& o) {
  const IntRange ms = pick(o.m, {2, 4}, {2, 5}, "m");
  const IntRange ns = pick(o.n, {2, 4}, {2, 5}, "n");
  ShapeDraw draw{std::mt19937_64(o.seed), ms, ns};
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    const auto [m, n] = draw.next();
    PatternSampler sampler(m, n, draw.rng(), draw.density());
    const PatternTensor t = sampler.next();
    const StepOperator op(t);
    const int kmax = (1 << n) - 1;
    for (int j = 1; j <= n; ++j) {
      IndexSet state = op.initial(j);
      for (int k = 1; k <= kmax + 1; ++k) {
        const IndexSet oracle = majorization_power_column(t, j, k);
        if (state != oracle) {
          s.expect(false, {m, n, k, j, "S_k vs majorization recurrence", oracle.to_string(), state.to_string()});
          break;
        }
        if (m == 2) {
          const IndexSet walk = walk_column(majorization(t), j, k);
          if (walk != state) {
            s.expect(false, {m, n, k, j, "S_k vs walk oracle", walk.to_string(), state.to_string()});
            break;
          }
        }
        state = op(state);
      }
      ++s.result.checks;
    }
    // Pruned vs unpruned families, six generations.
    const PositionalOperator pos(t);
    SetFamily pruned = SetFamily::singletons(n);
    std::vector<IndexSet> unpruned = pruned.sets();
    for (int g = 1; g <= 6 && !pruned.empty(); ++g) {
      pruned = family_step(pos, pruned);
      unpruned = unpruned_step(pos, unpruned);
      const auto reduced = minimal_antichain(unpruned);
      s.expect(reduced == pruned.sets(), {m, n, g, 0, "pruned vs unpruned family", std::to_string(reduced.size()) + " sets",
                                          std::to_string(pruned.size()) + " sets"});
      if (reduced != pruned.sets()) break;
      if (pruned.empty() || std::any_of(pruned.sets().begin(), pruned.sets().end(), [](IndexSet x) { return x.empty(); }))
        break;
    }
    // Second power positivity, family route vs literal product.
    if (m == 3 && n <= 3) {
      SetFamily f = SetFamily::singletons(n);
      bool family_positive = false;
      for (int g = 1; g <= 2 && !f.empty(); ++g) {
        f = family_step(pos, f);
        if (g == 2) family_positive = f.is_full(n);
      }
      const PatternTensor sq = direct_power(t, 2);
      const bool direct_positive = sq.size() == sq.codec().cell_count();
      s.expect(family_positive == direct_positive,
               {m, n, 2, 0, "T^2 positivity family vs direct", direct_positive ? "positive" : "not positive",
                family_positive ? "positive" : "not positive"});
    }
  }
}

using SuiteFn = void (*)(Suite&, const VerifyOptions&);

SuiteFn suite_fn(const std::string& name) {
  if (name == "a0") return suite_a0;
  if (name == "ak") return suite_ak;
  if (name == "exponent-set") return suite_exponent_set;
  if (name == "m2") return suite_m2;
  if (name == "chain") return suite_chain;
  if (name == "lift") return suite_lift;
  if (name == "oracles") return suite_oracles;
  throw Error(ErrorKind::BadShape, "unknown suite '" + name + "'");
}

}  // namespace

std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& options) {
  std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  std::vector<SuiteFn> fns;
  for (const auto& n : names) fns.push_back(suite_fn(n));
  std::vector<SuiteResult> results;
  for (std::size_t i = 0; i < names.size(); ++i) {
    Suite s;
    s.result.name = names[i];
    const auto start = std::chrono::steady_clock::now();
    fns[i](s, options);
    s.result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(s.result));
  }
  return results;
}

}  // namespace tprim
