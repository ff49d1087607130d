// Copyright 2026 The sfcorr Authors
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

#ifndef SFCORR_IO_HPP
#define SFCORR_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sfcorr/echo.hpp"
#include "sfcorr/matcore.hpp"
#include "sfcorr/moments.hpp"
#include "sfcorr/qubit.hpp"
#include "sfcorr/sampler.hpp"

namespace sfcorr::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text. Syntax errors throw Parse with "source:line:column".
Json parse_json(std::string_view text, std::string_view source = "<input>");

/// Reads and parses a whole file. Unreadable files throw Parse.
Json read_json_file(const std::string &path);

/// {"dim": d, "data": [[re, im], ...]} with d*d row-major entries. Wrong
/// lengths, non-numeric or non-finite entries throw Parse.
ComplexMatrix matrix_from_json(const Json &j);
/// Same layout with d entries.
PureState state_from_json(const Json &j);
/// {"kind": "haar"|"user", "n": int, "states": [state, ...]}
EnsembleSpec ensemble_from_json(const Json &j);

Json to_json(const ComplexMatrix &m);
Json to_json(const PureState &psi);
Json to_json(const CorrelationReport &r);
Json to_json(const ContrastReport &r);
Json to_json(const echo::ShortTimeReport &r);
Json to_json(const echo::AffineFit &fit);

/// 17 significant digits, '.' separator regardless of locale. Negative zero prints as "0".
std::string format_double(double x);

/// Header "polar,azimuth,x,y,z,fidelity".
void write_fringe_csv(std::ostream &out, const std::vector<qubit::FringeRow> &rows);
/// Header "delta,pcc".
void write_sweep_csv(std::ostream &out, const std::vector<std::pair<double, double>> &rows);

}  // namespace sfcorr::io

#endif
