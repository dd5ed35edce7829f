#pragma once

#include "tprim/index_set.hpp"
#include "tprim/pattern.hpp"

namespace tprim {

/// |a|_n: the representative of a modulo n in {1, ..., n}.
class ResidueIndex {
 public:
  ResidueIndex(long a, int n);
  int value() const { return value_; }
  operator int() const { return value_; }

 private:
  int value_;
};

/// k = (n - 1) q + r with 1 <= r <= n - 1.
struct KDecomposition {
  int k;
  int q;
  int r;

  static KDecomposition of(int k, int n);
};

/// n^2 - 3n + 2, the largest k accepted by tensor_ak.
inline constexpr int max_ak_index(int n) { return n * n - 3 * n + 2; }

/// Wielandt pattern M_1: ones at (1, n-1), (1, n), (i, i-1) for 2 <= i <= n-1
/// and (n, n-1). For n = 2 the cells (1,1), (1,2), (2,1).
BoolMatrix wielandt_matrix(int n);

/// A_0(m, n): diagonal embedding of M_1.
PatternTensor tensor_a0(int m, int n);

/// A_k(m, n): A_0 plus, for every head outside {r-q, ..., r+1} (mod n), every
/// tail whose support is exactly {r-q-1, r} (mod n). gamma(A_k) = k + n.
PatternTensor tensor_ak(int m, int n, int k);

/// Primitive matrix with exponent t (1 <= t <= n): all ones for t = 1, else
/// rows 1..t-1 hold the single cell (i, i+1) and rows t..n are full.
/// Self-checked against the dynamics; throws SelfCheckFailed on mismatch.
BoolMatrix exponent_t_matrix(int n, int t);

/// B_t with gamma(B_t) = t for 1 <= t <= (n-1)^2 + 1.
PatternTensor tensor_bt(int m, int n, int t);

/// M_2: ones at (i, i+1) for i <= n-3, (n-2, 1), (n-2, n-1), (n-1, 1), (n, n-1).
BoolMatrix m2_matrix(int n);

/// Chain tensor over the size floor((n-1)/2) subsets of {2..n} in lexicographic
/// order: gamma_1 = C(n-1, floor((n-1)/2)) + 1 while not primitive.
PatternTensor chain_tensor(int m, int n);

/// Order m+1 tensor with entry (i_1, ..., i_m, i_m) for each entry of t.
PatternTensor order_lift(const PatternTensor& t);

/// 3x3x3 tensor, all ones except a_111, a_222, a_333, a_233, a_311.
PatternTensor example_415();

}  // namespace tprim
