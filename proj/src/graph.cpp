#include "tprim/graph.hpp"

#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>

#include "tprim/dynamics.hpp"
#include "tprim/error.hpp"

namespace tprim {

int Digraph::arc_count() const {
  int c = 0;
  for (auto s : out) c += s.size();
  return c;
}

Digraph digraph_of(const BoolMatrix& m) {
  Digraph d{m.dim(), {}};
  d.out.reserve(static_cast<std::size_t>(m.dim()));
  for (int i = 1; i <= m.dim(); ++i) d.out.push_back(m.row(i));
  return d;
}

Digraph reverse(const Digraph& d) {
  Digraph r{d.n, std::vector<IndexSet>(static_cast<std::size_t>(d.n))};
  for (int i = 1; i <= d.n; ++i)
    for (int j : d.out[static_cast<std::size_t>(i - 1)].members())
      r.out[static_cast<std::size_t>(j - 1)] = r.out[static_cast<std::size_t>(j - 1)].with(i);
  return r;
}

IndexSet exact_length_reach(const Digraph& d, int source, int k) {
  if (source < 1 || source > d.n)
    throw Error(ErrorKind::IndexOutOfRange, "source " + std::to_string(source) + " outside [1, " + std::to_string(d.n) + "]");
  if (k < 1) throw Error(ErrorKind::BadLimit, "walk length " + std::to_string(k) + " < 1");
  IndexSet frontier = IndexSet::single(source);
  for (int step = 0; step < k; ++step) {
    IndexSet next;
    for (int v : frontier.members()) next = next | d.out[static_cast<std::size_t>(v - 1)];
    frontier = next;
  }
  return frontier;
}

namespace {

IndexSet reachable_from(const Digraph& d, int source) {
  IndexSet seen = IndexSet::single(source);
  IndexSet frontier = seen;
  while (!frontier.empty()) {
    IndexSet next;
    for (int v : frontier.members()) next = next | d.out[static_cast<std::size_t>(v - 1)];
    frontier = IndexSet::from_mask(next.mask() & ~seen.mask());
    seen = seen | next;
  }
  return seen;
}

}  // namespace

bool is_strongly_connected(const Digraph& d) {
  if (d.n == 0) return false;
  return reachable_from(d, 1).is_full(d.n) && reachable_from(reverse(d), 1).is_full(d.n);
}

std::optional<int> cycle_gcd(const Digraph& d) {
  if (!is_strongly_connected(d)) return std::nullopt;
  std::vector<int> level(static_cast<std::size_t>(d.n), -1);
  std::deque<int> queue{1};
  level[0] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : d.out[static_cast<std::size_t>(u - 1)].members()) {
      if (level[static_cast<std::size_t>(v - 1)] < 0) {
        level[static_cast<std::size_t>(v - 1)] = level[static_cast<std::size_t>(u - 1)] + 1;
        queue.push_back(v);
      }
    }
  }
  int g = 0;
  for (int u = 1; u <= d.n; ++u)
    for (int v : d.out[static_cast<std::size_t>(u - 1)].members())
      g = std::gcd(g, std::abs(level[static_cast<std::size_t>(u - 1)] + 1 - level[static_cast<std::size_t>(v - 1)]));
  return g;
}

Reducibility is_reducible_tensor(const PatternTensor& t) { return is_reducible_tensor(compress(t)); }

Reducibility is_reducible_tensor(const CompressedSlices& slices) {
  const int n = slices.dim;
  if (n > 24) throw Error(ErrorKind::DimensionTooLarge, "subset enumeration needs n <= 24, got " + std::to_string(n));
  const std::uint32_t full = IndexSet::full(n).mask();
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    IndexSet subset = IndexSet::from_mask(mask);
    bool blocked = true;
    for (const auto& s : slices.slices) {
      if (subset.contains(s.head) && (s.support & subset).empty()) {
        blocked = false;
        break;
      }
    }
    if (blocked) return {true, subset};
  }
  return {};
}

std::optional<int> matrix_exponent(const BoolMatrix& m) {
  BoolMatrix power = m;
  const int cap = wielandt_bound(m.dim());
  for (int k = 1; k <= cap; ++k) {
    if (power.all_positive()) return k;
    power = power * m;
  }
  return std::nullopt;
}

}  // namespace tprim
