#pragma once

#include <optional>
#include <vector>

#include "tprim/index_set.hpp"
#include "tprim/pattern.hpp"

namespace tprim {

/// Digraph on [n], loops allowed, no multi-arcs. out[i - 1] holds the heads
/// of the arcs leaving i.
struct Digraph {
  int n = 0;
  std::vector<IndexSet> out;

  bool has_arc(int from, int to) const { return out.at(static_cast<std::size_t>(from - 1)).contains(to); }
  int arc_count() const;
  friend bool operator==(const Digraph&, const Digraph&) = default;
};

/// D(M): arc (i, j) iff M(i, j).
Digraph digraph_of(const BoolMatrix& m);
Digraph reverse(const Digraph& d);

/// Vertices at the end of walks of length exactly k from source.
IndexSet exact_length_reach(const Digraph& d, int source, int k);

bool is_strongly_connected(const Digraph& d);

/// gcd of all cycle lengths of a strongly connected digraph; nullopt otherwise.
/// Uses BFS levels: the gcd of level(u) + 1 - level(v) over all arcs u -> v.
std::optional<int> cycle_gcd(const Digraph& d);

/// Witness of reducibility: a nonempty proper I with no entry whose head is
/// in I and whose tail indices all lie outside I.
struct Reducibility {
  bool reducible = false;
  IndexSet witness;
};

/// Exhaustive over the 2^n - 2 candidate subsets, in increasing mask order.
/// Throws DimensionTooLarge for n > 24.
Reducibility is_reducible_tensor(const PatternTensor& t);
Reducibility is_reducible_tensor(const CompressedSlices& slices);

/// Least k with M^k all positive, by repeated boolean multiplication up to
/// (n - 1)^2 + 1; nullopt when not primitive.
std::optional<int> matrix_exponent(const BoolMatrix& m);

}  // namespace tprim
