// Copyright 2026 The filterkey Authors
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

// JSON and CSV encodings of states, filters, reports and sweeps.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "filterkey/filtration.hpp"
#include "filterkey/keyrate.hpp"
#include "filterkey/optimizer.hpp"
#include "filterkey/states.hpp"

namespace filterkey {

using nlohmann::json;

/// {family, p, ordering, matrix: 16 x 16 array of [re, im]}.
json state_to_json(const DensityMatrix16& s);
DensityMatrix16 state_from_json(const json& j);

/// [a, b, c, d, r, s, t, u]
json filter_to_json(const LocalFilter& f);
LocalFilter filter_from_json(const json& j);
/// "a,b,c,d,r,s,t,u" or a JSON array.
LocalFilter parse_filter(const std::string& text);

json keyrate_to_json(const KeyRateReport& r);
json optimization_to_json(const OptimizationResult& r);

/// 17 significant digits; parses back to the identical double.
std::string format_double(double v);

inline constexpr const char* kSweepCsvHeader =
    "p,kdw_before,kdw_after,success_prob,effective_rate,a,b,c,d,r,s,t,u";

/// Writes an optional "# provenance ..." line, the header, then one row per
/// record. LF line endings.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows,
                     const std::string& provenance);
/// Skips '#' comment lines; throws ArgumentError on a malformed header or row.
std::vector<SweepRecord> read_sweep_csv(std::istream& is);

}  // namespace filterkey
