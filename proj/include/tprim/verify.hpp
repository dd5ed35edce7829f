#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tprim {

/// Inclusive integer range, parsed from "3" or "3..7".
struct IntRange {
  int lo = 0;
  int hi = 0;

  static IntRange parse(const std::string& text);
  bool contains(int x) const { return lo <= x && x <= hi; }
};

struct VerifyOptions {
  /// Empty ranges fall back to the suite defaults.
  std::optional<IntRange> m;
  std::optional<IntRange> n;
  std::uint64_t samples = 500;
  std::uint64_t seed = 1;
};

struct VerifyFailure {
  int m = 0;
  int n = 0;
  int k = 0;  // construction parameter (k, t), 0 when unused
  int j = 0;  // 0 when the check is not per column
  std::string what;
  std::string expected;
  std::string actual;

  std::string to_string() const;
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::vector<VerifyFailure> failures;
  double seconds = 0;

  bool passed() const { return failures.empty(); }
};

/// Suite names accepted by run_suite, "all" excluded.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws BadShape for an unknown
/// suite or a range outside what the suite supports.
std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace tprim
