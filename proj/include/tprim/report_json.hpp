#pragma once

#include <string>

#include <json.hpp>

#include "tprim/explore.hpp"

namespace tprim {

const char* to_string(ScanMode mode);

/// {"params", "results", "violations", "seed", "version"}. The worker count is
/// left out so reports compare equal across any parallelism.
nlohmann::json report_to_json(const AtlasReport& report);

/// Aligned-column summary for terminals.
std::string report_to_text(const AtlasReport& report);

/// "degree,count" rows of the achieved table.
std::string report_to_csv(const AtlasReport& report);

/// Counterexamples as a replay file body (JSON array of pattern tensors).
nlohmann::json replay_json(const AtlasReport& report);

}  // namespace tprim
