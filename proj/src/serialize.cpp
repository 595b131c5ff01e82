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

#include "filterkey/serialize.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "filterkey/errors.hpp"

namespace filterkey {

json state_to_json(const DensityMatrix16& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < 16; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 16; ++j) {
      const cplx z = s.matrix()(i, j);
      row.push_back({z.real(), z.imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"family", family_name(s.family())},
          {"p", s.parameter()},
          {"ordering", ordering_name(s.ordering())},
          {"matrix", std::move(rows)}};
}

DensityMatrix16 state_from_json(const json& j) {
  try {
    const json& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != 16)
      throw ArgumentError("state matrix must have 16 rows");
    std::vector<cplx> e;
    e.reserve(256);
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != 16)
        throw ArgumentError("state matrix rows must have 16 entries");
      for (const json& z : row) e.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    }
    return DensityMatrix16(HermitianMatrix(ComplexMatrix(16, 16, std::move(e))),
                           parse_ordering(j.at("ordering").get<std::string>()),
                           parse_family(j.at("family").get<std::string>()),
                           j.at("p").get<double>());
  } catch (const json::exception& ex) {
    throw ArgumentError(std::string("malformed state JSON: ") + ex.what());
  }
}

json filter_to_json(const LocalFilter& f) {
  json a = json::array();
  for (double v : f.params()) a.push_back(v);
  return a;
}

LocalFilter filter_from_json(const json& j) {
  if (!j.is_array() || j.size() != 8)
    throw ArgumentError("filter JSON must be an array of 8 numbers");
  std::array<double, 8> p{};
  try {
    for (std::size_t i = 0; i < 8; ++i) p[i] = j[i].get<double>();
  } catch (const json::exception& ex) {
    throw ArgumentError(std::string("malformed filter JSON: ") + ex.what());
  }
  return LocalFilter(p);
}

LocalFilter parse_filter(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ArgumentError("malformed filter JSON");
    return filter_from_json(j);
  }
  std::array<double, 8> p{};
  std::stringstream ss(text);
  std::string tok;
  std::size_t n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n == 8) throw ArgumentError("filter needs exactly 8 values");
    try {
      std::size_t used = 0;
      p[n] = std::stod(tok, &used);
      if (tok.find_first_not_of(" \t", used) != std::string::npos)
        throw ArgumentError("bad filter value '" + tok + "'");
    } catch (const std::logic_error&) {
      throw ArgumentError("bad filter value '" + tok + "'");
    }
    ++n;
  }
  if (n != 8) throw ArgumentError("filter needs exactly 8 values");
  return LocalFilter(p);
}

json keyrate_to_json(const KeyRateReport& r) {
  json j = {{"x", r.params.x},     {"y", r.params.y},
            {"z", r.params.z},     {"w", r.params.w},
            {"entropy", r.entropy}, {"kdw", r.kdw},
            {"path", path_name(r.path)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json optimization_to_json(const OptimizationResult& r) {
  static constexpr const char* kNames[8] = {"a", "b", "c", "d", "r", "s", "t", "u"};
  json lower = json::array();
  for (std::size_t i = 0; i < 8; ++i)
    if (r.at_lower_bound[i]) lower.push_back(kNames[i]);
  return {{"filter", filter_to_json(r.filter)},
          {"kdw", r.kdw},
          {"success_probability", r.success_probability},
          {"effective_rate", r.effective_rate},
          {"evaluations", r.evaluations},
          {"mode", mode_name(r.mode)},
          {"at_lower_bound", std::move(lower)}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows,
                     const std::string& provenance) {
  if (!provenance.empty()) os << "# provenance " << provenance << '\n';
  os << kSweepCsvHeader << '\n';
  for (const SweepRecord& r : rows) {
    os << format_double(r.p) << ',' << format_double(r.kdw_before) << ','
       << format_double(r.kdw_after) << ',' << format_double(r.success_prob) << ','
       << format_double(r.effective_rate);
    for (double v : r.filter.params()) os << ',' << format_double(v);
    os << '\n';
  }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
  std::vector<SweepRecord> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kSweepCsvHeader) throw ArgumentError("unexpected CSV header");
      header_seen = true;
      continue;
    }
    std::vector<double> v;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        v.push_back(std::stod(tok));
      } catch (const std::logic_error&) {
        throw ArgumentError("bad CSV field '" + tok + "'");
      }
    }
    if (v.size() != 13) throw ArgumentError("CSV row must have 13 fields");
    SweepRecord r;
    r.p = v[0];
    r.kdw_before = v[1];
    r.kdw_after = v[2];
    r.success_prob = v[3];
    r.effective_rate = v[4];
    r.filter = LocalFilter({v[5], v[6], v[7], v[8], v[9], v[10], v[11], v[12]});
    out.push_back(r);
  }
  if (!header_seen) throw ArgumentError("CSV has no header");
  return out;
}

}  // namespace filterkey
