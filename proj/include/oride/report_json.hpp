//
// Copyright 2026 The oride-triangulation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ORIDE_REPORT_JSON_HPP_
#define ORIDE_REPORT_JSON_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "oride/experiment.hpp"

namespace oride {

// Same fields as the CSV plus per-trial percentages. mean_runtime_ms is null
// unless timing was requested.
inline nlohmann::ordered_json to_json(const std::vector<CellResult>& results, bool with_timing) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const CellResult& r : results) {
    const CellKey& k = r.summary.key;
    nlohmann::ordered_json cell;
    cell["zone_km2"] = k.zone_km2;
    cell["n"] = k.n;
    cell["rho_m"] = k.rho;
    cell["m"] = k.m;
    cell["tau_m"] = k.tau;
    cell["variant"] = r.cell.variant == Variant::kExact ? "exact" : "noisy";
    cell["trials"] = r.summary.trials;
    cell["mean_pct"] = r.summary.mean_percentage;
    cell["stddev_pct"] = r.summary.stddev_percentage;
    cell["mean_eta"] = r.summary.mean_eta;
    cell["mean_runtime_ms"] =
        with_timing ? nlohmann::ordered_json(r.mean_runtime_ms) : nlohmann::ordered_json();
    cell["trial_pct"] = r.summary.percentages;
    cells.push_back(std::move(cell));
  }
  return nlohmann::ordered_json{{"cells", std::move(cells)}};
}

}  // namespace oride

#endif  // ORIDE_REPORT_JSON_HPP_
