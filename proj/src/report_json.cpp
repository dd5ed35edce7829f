#include "tprim/report_json.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "tprim/pattern_json.hpp"

#ifndef TPRIM_VERSION
#define TPRIM_VERSION "0.0.0"
#endif

namespace tprim {

const char* to_string(ScanMode mode) { return mode == ScanMode::Exhaustive ? "exhaustive" : "sampled"; }

namespace {

nlohmann::json degree_table(const std::map<int, std::uint64_t>& table) {
  auto rows = nlohmann::json::array();
  for (const auto& [degree, count] : table) rows.push_back({{"degree", degree}, {"count", count}});
  return rows;
}

nlohmann::json witness_json(const Witness& w) {
  nlohmann::json j = {{"index", w.index}, {"tensor", tensor_to_json(w.tensor)}};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

}  // namespace

nlohmann::json report_to_json(const AtlasReport& r) {
  const auto& c = r.config;
  nlohmann::json params = {{"target", r.target}, {"m", c.m}, {"n", c.n}};
  if (r.target == "rj") params["j"] = c.j;
  if (r.target == "rj" || r.target == "conjecture45") {
    params["mode"] = to_string(c.mode);
    if (c.mode == ScanMode::Sampled) {
      params["count"] = c.count;
      params["density"] = c.density;
    }
  }
  if (r.target == "rj") params["include_constructions"] = c.include_constructions;

  nlohmann::json results;
  results["achieved"] = degree_table(r.achieved);
  if (!r.achieved_union.empty()) results["achieved_all_j"] = degree_table(r.achieved_union);
  if (auto mx = r.max_achieved()) {
    results["max"] = *mx;
  } else {
    results["max"] = nullptr;
  }
  auto gaps = nlohmann::json::array();
  for (const auto& [lo, hi] : r.gaps) gaps.push_back({lo, hi});
  results["gaps"] = gaps;
  results["counters"] = r.counters;
  auto checks = nlohmann::json::array();
  for (const auto& chk : r.checks)
    checks.push_back({{"name", chk.name}, {"passed", chk.passed}, {"asserted", chk.asserted}, {"detail", chk.detail}});
  results["checks"] = checks;
  auto witnesses = nlohmann::json::array();
  for (const auto& [degree, w] : r.witnesses) {
    auto j = witness_json(w);
    j["degree"] = degree;
    witnesses.push_back(std::move(j));
  }
  results["witnesses"] = witnesses;
  auto cx = nlohmann::json::array();
  for (const auto& w : r.counterexamples) cx.push_back(witness_json(w));
  results["counterexamples"] = cx;
  auto obs = nlohmann::json::array();
  for (const auto& w : r.observations) obs.push_back(witness_json(w));
  results["observations"] = obs;

  return {{"params", params},
          {"results", results},
          {"violations", r.violations},
          {"seed", c.mode == ScanMode::Sampled ? nlohmann::json(c.seed) : nlohmann::json(nullptr)},
          {"version", TPRIM_VERSION}};
}

std::string report_to_text(const AtlasReport& r) {
  std::ostringstream out;
  const auto& c = r.config;
  out << "target  " << r.target << "\n";
  out << "shape   m=" << c.m << " n=" << c.n;
  if (r.target == "rj") out << " j=" << c.j;
  if (r.target == "rj" || r.target == "conjecture45") {
    out << " mode=" << to_string(c.mode);
    if (c.mode == ScanMode::Sampled) out << " count=" << c.count << " seed=" << c.seed << " density=" << c.density;
  }
  out << "\n\n";

  if (!r.counters.empty()) {
    std::size_t width = 0;
    for (const auto& [k, v] : r.counters) width = std::max(width, k.size());
    for (const auto& [k, v] : r.counters) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
    out << "\n";
  }

  out << std::right << std::setw(8) << "degree" << std::setw(12) << "count" << "\n";
  for (const auto& [degree, count] : r.achieved) out << std::setw(8) << degree << std::setw(12) << count << "\n";
  if (auto mx = r.max_achieved()) out << "max     " << *mx << "\n";
  out << "gaps    ";
  if (r.gaps.empty()) out << "none";
  for (std::size_t i = 0; i < r.gaps.size(); ++i) {
    if (i) out << ", ";
    const auto& [lo, hi] = r.gaps[i];
    out << (lo == hi ? std::to_string(lo) : "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  out << "\n\n";

  for (const auto& chk : r.checks)
    out << (chk.passed ? "ok    " : (chk.asserted ? "FAIL  " : "note  ")) << chk.name << "  " << chk.detail << "\n";
  for (const auto& w : r.counterexamples) out << "candidate #" << w.index << "  " << tensor_summary(w.tensor) << "\n";
  for (const auto& w : r.observations)
    out << "observation #" << w.index << "  " << w.note << "  " << tensor_summary(w.tensor) << "\n";
  for (const auto& v : r.violations) out << "VIOLATION " << v << "\n";
  return out.str();
}

std::string report_to_csv(const AtlasReport& r) {
  std::string s = "degree,count\n";
  for (const auto& [degree, count] : r.achieved) s += std::to_string(degree) + "," + std::to_string(count) + "\n";
  return s;
}

nlohmann::json replay_json(const AtlasReport& r) {
  auto arr = nlohmann::json::array();
  for (const auto& w : r.counterexamples) arr.push_back(tensor_to_json(w.tensor));
  return arr;
}

}  // namespace tprim
