// Copyright 2026 The qness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "qness/correlations.hpp"
#include "qness/interferometer.hpp"
#include "qness/qcore.hpp"

namespace qness {

/// Malformed state file or report input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

struct LoadedState {
  DensityMatrix state;
  std::optional<std::pair<int, int>> dims;

  /// The state as A x B; explicit dims override the file's own.
  BipartiteState bipartite(std::optional<std::pair<int, int>> override_dims = std::nullopt) const;
};

// State file: {"dim": d, "dims": [da, db] (optional), "re": [[...]], "im": [[...]]}.
LoadedState parse_state(const nlohmann::json& doc);
LoadedState load_state(const std::string& path);
nlohmann::json state_to_json(const DensityMatrix& rho,
                             std::optional<std::pair<int, int>> dims = std::nullopt);
void save_state(const std::string& path, const DensityMatrix& rho,
                std::optional<std::pair<int, int>> dims = std::nullopt);

/// "phase_rad,p0,shots" then one row per point sorted by phase, 17 significant digits.
std::string fringes_to_csv(const FringeData& fringes);
void write_fringes(const FringeData& fringes, const std::string& path);

/// Lowercase hex SHA-256 of the file contents.
std::string file_digest(const std::string& path);

nlohmann::json visibility_to_json(const VisibilityEstimate& v);
nlohmann::json discord_report_to_json(const DiscordReport& r, double threshold);

void write_text(const std::string& path, const std::string& text);

}  // namespace qness
