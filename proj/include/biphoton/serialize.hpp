/**
 * Copyright 2026 The Biphoton Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * JSON documents: "coincidence/1" records and "recon/1" results.
 * Objects keep their keys sorted and floats use the shortest text that
 * reads back to the same double, so equal inputs give byte-identical output.
 */

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "biphoton/measurement.hpp"
#include "biphoton/reconstruct.hpp"

namespace biphoton::serialize {

using Json = nlohmann::json;

inline constexpr const char* kRecordSchema = "coincidence/1";
inline constexpr const char* kResultSchema = "recon/1";

Json complex_to_json(Complex z);
/// Accepts {re, im} objects, [re, im] pairs, or bare numbers.
/// Throws ErrorCode::MalformedRecord otherwise.
Complex complex_from_json(const Json& j);
std::vector<Complex> amplitudes_from_json(const Json& j);

Json to_json(const CoincidenceRecord& rec);
/// Throws ErrorCode::MalformedRecord on schema violations.  A missing
/// "kind" is inferred from the setting labels.
CoincidenceRecord record_from_json(const Json& j);

Json to_json(const QutritReconstruction& r);
Json to_json(const QuquartReconstruction& r);

Json to_json(const EntanglementReport& r);
Json to_json(const QuquartReport& r);
Json to_json(const PolarizationReport& r);
Json to_json(const SchmidtDecomposition& s);
Json to_json(const ComplexMatrix& m);

/// Compact single-line text.
std::string dump(const Json& j);

}  // namespace biphoton::serialize
