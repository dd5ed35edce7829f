#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tprim/dynamics.hpp"
#include "tprim/graph.hpp"
#include "tprim/pattern.hpp"
#include "tprim/strong.hpp"

namespace tprim {

// ---------------------------------------------------------------------------
// Pattern streams
// ---------------------------------------------------------------------------

/// Every zero pattern of order m, dimension n. Pattern number x contains the
/// cell with code c iff bit c of x is set; the stream runs x = 0, 1, ...,
/// 2^(n^m) - 1. Throws SpaceTooLarge when n^m > 30.
class PatternSpace {
 public:
  PatternSpace(int m, int n);

  int order() const { return codec_.order(); }
  int dim() const { return codec_.dim(); }
  const CellCodec& codec() const { return codec_; }
  std::uint64_t size() const { return std::uint64_t{1} << codec_.cell_count(); }

  /// Cell codes of pattern x, ascending.
  void codes_at(std::uint64_t x, std::vector<std::uint64_t>& out) const;
  PatternTensor at(std::uint64_t x) const;

 private:
  CellCodec codec_;
};

/// Streams all patterns of PatternSpace(m, n) in canonical order.
void enumerate_patterns(int m, int n, const std::function<void(const PatternTensor&)>& visit);

/// Seeded sampler: std::mt19937_64(seed); each cell, in code order, is included
/// when (draw >> 11) * 2^-53 < density. Same seed, same stream.
class PatternSampler {
 public:
  /// Throws BadLimit unless 0 < density < 1; TooLarge past 2^20 cells.
  PatternSampler(int m, int n, std::uint64_t seed, double density);

  const CellCodec& codec() const { return codec_; }
  void next_codes(std::vector<std::uint64_t>& out);
  PatternTensor next();

 private:
  CellCodec codec_;
  std::mt19937_64 rng_;
  double density_;
};

/// `count` patterns from PatternSampler. Throws BadLimit for count < 1.
std::vector<PatternTensor> sample_patterns(int m, int n, std::uint64_t count, std::uint64_t seed, double density);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct PatternClassification {
  std::uint64_t id = 0;  // canonical hash
  bool primitive = false;
  std::optional<bool> irreducible;  // empty when n > 24
  IndexSet reducibility_witness;
  DegreeReport degrees;
  std::optional<StrongReport> strong;

  bool any_j_primitive() const { return degrees.any_j_primitive(); }
};

PatternClassification classify(const PatternTensor& t, bool with_strong = false, int cap = kDefaultStrongCap);

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

enum class ScanMode { Exhaustive, Sampled };

struct ScanConfig {
  int m = 3;
  int n = 3;
  int j = 1;
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t seed = 1;
  std::uint64_t count = 1000;   // sampled mode
  double density = 0.15;
  unsigned workers = 1;
  /// rj: also feed the chain tensor (when its order condition holds).
  bool include_constructions = false;
};

struct BoundCheck {
  std::string name;
  bool passed = true;
  /// Asserted checks encode theorems; a failure is also a violation.
  bool asserted = true;
  std::string detail;
};

/// A tensor kept for replay, with its position in the scanned stream.
struct Witness {
  std::uint64_t index = 0;
  PatternTensor tensor;
  std::string note;
};

struct AtlasReport {
  std::string target;
  ScanConfig config;
  /// Degree -> number of tensors achieving it.
  std::map<int, std::uint64_t> achieved;
  /// Same, aggregated over every j (rj and r2 targets).
  std::map<int, std::uint64_t> achieved_union;
  std::vector<std::pair<int, int>> gaps;
  /// Degree -> first witness in stream order.
  std::map<int, Witness> witnesses;
  std::map<std::string, std::uint64_t> counters;
  std::vector<Witness> counterexamples;
  /// Open-problem observations (e.g. gamma_j sets that are not intervals).
  std::vector<Witness> observations;
  std::vector<BoundCheck> checks;
  std::vector<std::string> violations;

  std::optional<int> max_achieved() const;
  bool ok() const { return violations.empty(); }
};

/// Maximal runs of integers in [1, max(achieved)) missing from `achieved`.
std::vector<std::pair<int, int>> find_gaps(const std::map<int, std::uint64_t>& achieved);

/// Compares primitivity against irreducible-and-some-j-primitive on every
/// pattern. Forward failures are violations; reverse discrepancies are
/// re-verified with the oracles and quarantined as counterexamples.
AtlasReport conjecture45_scan(const ScanConfig& config);

/// gamma(B_t) for every t in [1, (n-1)^2 + 1].
AtlasReport exponent_scan(int m, int n);

/// gamma_j over non-primitive, j-primitive patterns, with ceilings and the
/// order-lift inclusion check on the witnesses.
AtlasReport rj_scan(const ScanConfig& config);

/// Exhaustive maximum of gamma_j over non-primitive j-primitive n x n
/// matrices (n <= 5). Asserts equality with n^2 - 4n + 6 for n >= 4.
AtlasReport r2_exhaustive(int n, unsigned workers = 1);

}  // namespace tprim
