// Acceptance run: each criterion prints one PASS/FAIL line with its timing.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "support/oracles.hpp"
#include "tprim/constructions.hpp"
#include "tprim/dynamics.hpp"
#include "tprim/explore.hpp"
#include "tprim/graph.hpp"
#include "tprim/pattern_json.hpp"
#include "tprim/strong.hpp"

using namespace tprim;

namespace {

/// Collects the first few mismatches of a criterion.
struct Log {
  int failures = 0;
  std::ostringstream detail;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 5) detail << "    " << what << "\n";
    ++failures;
  }
};

std::string show(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0 = exactness only
  std::function<void(Log&)> body;
};

// 1. gamma(A_0) = (n-1)^2 + 1.
void wielandt_tightness(Log& log) {
  for (int m = 3; m <= 4; ++m)
    for (int n = 3; n <= 7; ++n) {
      auto g = primitive_degree(tensor_a0(m, n)).gamma;
      log.expect(g == wielandt_bound(n), "m=" + std::to_string(m) + " n=" + std::to_string(n) + " gamma " + show(g));
    }
}

// 2. gamma_{n-1}(A_0) = n^2 - 3n + 3.
void a0_column(Log& log) {
  for (int m = 3; m <= 4; ++m)
    for (int n = 3; n <= 7; ++n) {
      auto g = j_primitive_degree(tensor_a0(m, n), n - 1).value;
      log.expect(g == n * n - 3 * n + 3,
                 "m=" + std::to_string(m) + " n=" + std::to_string(n) + " gamma_{n-1} " + show(g));
    }
}

// 3. Closed form of S_k(A_0, n-1), sizes, distinctness, last state [n-1].
void a0_closed_form(Log& log) {
  for (int n = 4; n <= 8; ++n) {
    const auto a0 = tensor_a0(3, n);
    const int last = n * n - 3 * n + 2;
    const auto trace = s_sequence(a0, n - 1);
    std::set<std::uint32_t> seen;
    for (int k = 1; k <= last; ++k) {
      const auto d = KDecomposition::of(k, n);
      IndexSet want;
      for (int a = d.r - d.q - 1; a <= d.r; ++a) want = want.with(ResidueIndex(a, n));
      const IndexSet got = k <= static_cast<int>(trace.states.size()) ? trace.state(k) : IndexSet{};
      const std::string at = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " ";
      log.expect(got == want, at + "S_k " + got.to_string() + " want " + want.to_string());
      log.expect(got.size() == d.q + 2, at + "|S_k| " + std::to_string(got.size()));
      log.expect(seen.insert(got.mask()).second, at + "repeated state");
      log.expect(!got.is_full(n), at + "state is [n]");
    }
    log.expect(trace.state(last) == IndexSet::full(n - 1), "n=" + std::to_string(n) + " final state");
  }
}

// 4. gamma_j(A_k) = k + n - j with column 0 read as column n, gamma(A_k) = k + n.
void ak_degrees(Log& log) {
  for (int m = 3; m <= 4; ++m)
    for (int n = 4; n <= 6; ++n)
      for (int k = 1; k <= max_ak_index(n); ++k) {
        const auto deg = primitive_degree(tensor_ak(m, n, k));
        const std::string at = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
        log.expect(deg.gamma == k + n, at + " gamma " + show(deg.gamma));
        for (int j = 0; j <= n - 1; ++j) {
          auto v = deg.at(j == 0 ? n : j).value;
          log.expect(v == k + n - j, at + " j=" + std::to_string(j) + " gamma_j " + show(v));
        }
      }
}

// 5. gamma(B_t) = t across [1, (n-1)^2 + 1].
void exponent_coverage(Log& log) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 4}, {3, 5}, {4, 4}}) {
    std::set<int> achieved;
    for (int t = 1; t <= wielandt_bound(n); ++t) {
      auto g = primitive_degree(tensor_bt(m, n, t)).gamma;
      log.expect(g == t, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " t=" + std::to_string(t) +
                             " gamma " + show(g));
      if (g) achieved.insert(*g);
    }
    log.expect(static_cast<int>(achieved.size()) == wielandt_bound(n), "achieved set incomplete");
  }
}

// 6. eta = 4 and the zero cells of the literal square.
void example_strong(Log& log) {
  const auto e = example_415();
  log.expect(e.size() == 22, "entry count " + std::to_string(e.size()));
  const auto rep = strongly_primitive_degree(e);
  log.expect(rep.eta == 4, "eta " + show(rep.eta));
  const auto sq = direct_power(e, 2);
  std::set<Tuple> zeros;
  for (std::uint64_t c = 0; c < sq.codec().cell_count(); ++c) {
    auto tuple = sq.codec().decode(c);
    if (!sq.contains(tuple)) zeros.insert(tuple);
  }
  const std::set<Tuple> want = {{1, 3, 3, 3, 3}, {2, 1, 1, 1, 1}, {3, 3, 3, 3, 3}};
  log.expect(zeros == want, "square has " + std::to_string(zeros.size()) + " zero cells");
}

// 7. M_2 and the exhaustive maximum over 4x4 patterns.
void m2_and_r2(Log& log) {
  for (int n = 5; n <= 7; ++n) {
    const auto deg = primitive_degree(matrix_tensor(m2_matrix(n)));
    log.expect(!deg.primitive(), "M_2(" + std::to_string(n) + ") primitive");
    log.expect(deg.at(n - 1).value == n * n - 4 * n + 6,
               "gamma_{n-1}(M_2(" + std::to_string(n) + ")) " + show(deg.at(n - 1).value));
  }
  const auto r = r2_exhaustive(4);
  log.expect(r.counters.at("classified") == 65536, "classified " + std::to_string(r.counters.at("classified")));
  log.expect(r.max_achieved() == 6, "r(2,4) " + show(r.max_achieved()));
  log.expect(r.ok(), "r2 report has violations");
}

// 8. Chain tensors.
void chains(Log& log) {
  const auto c5 = primitive_degree(chain_tensor(3, 5));
  log.expect(!c5.primitive(), "chain(3,5) primitive");
  log.expect(c5.at(1).value == 7, "chain(3,5) gamma_1 " + show(c5.at(1).value));
  const auto c7 = primitive_degree(chain_tensor(4, 7));
  log.expect(!c7.primitive(), "chain(4,7) primitive");
  log.expect(c7.at(1).value == 21, "chain(4,7) gamma_1 " + show(c7.at(1).value));
}

// 9. Order lift preserves every degree on 500 seeded tensors.
void lift(Log& log) {
  std::mt19937_64 rng(9);
  int primitive = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const double density = 0.1 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto t = oracle::random_pattern(rng, 3, n, density);
    const auto a = primitive_degree(t);
    const auto b = primitive_degree(order_lift(t));
    const std::string at = "sample " + std::to_string(i) + " n=" + std::to_string(n);
    log.expect(a.primitive() == b.primitive(), at + " primitivity changed");
    log.expect(a.gamma == b.gamma, at + " gamma " + show(a.gamma) + " -> " + show(b.gamma));
    for (int j = 1; j <= n; ++j)
      log.expect(a.at(j).value == b.at(j).value, at + " gamma_" + std::to_string(j) + " changed");
    primitive += a.primitive();
  }
  log.note = std::to_string(primitive) + "/500 primitive";
}

// 10. Bitset dynamics against the oracles on 500 seeded tensors.
void oracles(Log& log) {
  std::mt19937_64 rng(10);
  int squares = 0;
  for (int i = 0; i < 500; ++i) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const int n = 2 + static_cast<int>(rng() % 3);
    const double density = 0.1 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto t = oracle::random_pattern(rng, m, n, density);
    const auto d = oracle::dense_of(t);
    const StepOperator op(t);
    const std::string at = "sample " + std::to_string(i) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
    for (int j = 1; j <= n; ++j) {
      IndexSet s = op.initial(j);
      std::vector<bool> dense(static_cast<std::size_t>(n));
      for (int u = 0; u < n; ++u) dense[static_cast<std::size_t>(u)] = d.majorization(u, j - 1);
      for (int k = 1; k <= (1 << n); ++k) {
        IndexSet dense_set;
        for (int u = 0; u < n; ++u)
          if (dense[static_cast<std::size_t>(u)]) dense_set = dense_set.with(u + 1);
        log.expect(s == dense_set, at + " j=" + std::to_string(j) + " k=" + std::to_string(k) + " vs dense");
        log.expect(s == majorization_power_column(t, j, k),
                   at + " j=" + std::to_string(j) + " k=" + std::to_string(k) + " vs recurrence");
        if (m == 2)
          log.expect(s == walk_column(majorization(t), j, k),
                     at + " j=" + std::to_string(j) + " k=" + std::to_string(k) + " vs walks");
        s = op(s);
        dense = oracle::column_step(d, dense);
      }
    }
    SetFamily pruned = SetFamily::singletons(n);
    std::set<std::uint32_t> raw;
    for (int u = 0; u < n; ++u) raw.insert(1u << u);
    for (int g = 1; g <= 6; ++g) {
      pruned = family_step(t, pruned);
      raw = oracle::unpruned_step(d, raw);
      std::vector<std::uint32_t> got;
      for (auto x : pruned.sets()) got.push_back(x.mask());
      log.expect(got == oracle::minimal(raw), at + " family generation " + std::to_string(g));
    }
    if (m == 3 && n <= 3) {
      ++squares;
      const auto f2 = family_step(t, family_step(t, SetFamily::singletons(n)));
      const auto sq = direct_power(t, 2);
      const bool direct = sq.size() == sq.codec().cell_count();
      log.expect(f2.is_full(n) == direct, at + " square positivity");
      log.expect(oracle::dense_of(sq).cell == oracle::power(d, 2).cell, at + " square pattern");
    }
  }
  log.expect(squares > 0, "no sample exercised the square check");
  log.note = std::to_string(squares) + " square checks";
}

// 11. Forward direction of the irreducibility characterization, exhaustively.
void conjecture_probe(Log& log) {
  std::ostringstream summary;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 2}, {2, 2}, {2, 3}}) {
    ScanConfig cfg;
    cfg.m = m;
    cfg.n = n;
    const auto r = conjecture45_scan(cfg);
    const auto prim = r.counters.count("primitive") ? r.counters.at("primitive") : 0;
    const auto fwd = r.counters.count("forward_holds") ? r.counters.at("forward_holds") : 0;
    log.expect(prim == fwd, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " forward " +
                                std::to_string(fwd) + "/" + std::to_string(prim));
    log.expect(r.ok(), "m=" + std::to_string(m) + " n=" + std::to_string(n) + " violations");
    summary << " (" << m << "," << n << "): " << r.counters.at("classified") << " patterns, " << prim
            << " primitive, " << r.counterexamples.size() << " reverse discrepancies;";
    for (const auto& w : r.counterexamples)
      std::printf("      candidate #%llu %s\n", static_cast<unsigned long long>(w.index),
                  tensor_to_json(w.tensor).dump().c_str());
  }
  log.note = summary.str();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Wielandt tightness of A_0", 1, wielandt_tightness},
      {2, "gamma_{n-1}(A_0) = n^2-3n+3", 0, a0_column},
      {3, "closed form and distinctness of S_k(A_0, n-1)", 1, a0_closed_form},
      {4, "gamma_j(A_k) = k+n-j and gamma(A_k) = k+n", 5, ak_degrees},
      {5, "exponent set coverage by B_t", 5, exponent_coverage},
      {6, "strong primitivity of the 3x3x3 example", 1, example_strong},
      {7, "M_2 column degree and exhaustive r(2,4) = 6", 60, m2_and_r2},
      {8, "chain tensors gamma_1 = C(n-1, h) + 1", 0, chains},
      {9, "order lift preserves degrees (500 samples)", 30, lift},
      {10, "oracle equivalence (500 samples)", 120, oracles},
      {11, "forward implication over small exhaustive spaces", 10, conjecture_probe},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Log log;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(log);
    } catch (const std::exception& e) {
      log.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = log.failures == 0 && in_time;
    failed += !pass;
    std::string limit = c.limit_seconds > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s" : "";
    std::printf("%s  %2d  %-50s %8.3f s%s%s%s\n", pass ? "PASS" : "FAIL", c.number, c.name, secs, limit.c_str(),
                log.note.empty() ? "" : "  ", log.note.c_str());
    if (!in_time) std::printf("    over the time limit\n");
    std::fputs(log.detail.str().c_str(), stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
