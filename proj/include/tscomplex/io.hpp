// Copyright 2026 The tscomplex Authors
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

#ifndef TSCOMPLEX_IO_HPP
#define TSCOMPLEX_IO_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tscomplex/core.hpp"
#include "tscomplex/mbqc.hpp"
#include "tscomplex/raz.hpp"
#include "tscomplex/subgroup.hpp"

namespace tscomplex {

using Json = nlohmann::ordered_json;

/// {"n_qubits": n, "amplitudes": [[re, im], ...]} in basis-index order.
Json state_to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json report_to_json(const EstimateReport& r);
Json reading_to_json(const WitnessReading& r);
Json trace_to_json(const SimTrace& t);

std::string read_text_file(const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// RFC 4180 field quoting: fields with comma, quote or newline are quoted
/// and inner quotes doubled.
std::string csv_field(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace tscomplex

#endif  // TSCOMPLEX_IO_HPP
