/*
   Copyright 2026 The expsum authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>

#include "json.hpp"

#include "expsum/verifier.hpp"

namespace expsum {

using Json = nlohmann::ordered_json;

// Bumped whenever a serialized field changes meaning or shape.
inline constexpr int kSchemaVersion = 1;

// All serializers are deterministic: key order is fixed, large integers are
// decimal strings, and nothing time- or machine-dependent is emitted, so the
// same input bytes always produce the same output bytes.
Json json_of(const CycInt& v);
Json json_of(const TraceHistogram& h);
Json json_of(const SingularAnalysis& s);
Json json_of(const EigenvalueRecovery& r);
Json json_of(const TransversalReport& t);
Json json_of(const VerificationReport& rep);

// One-look text rendering of a verification run, for the terminal.
std::string render_text(const VerificationReport& rep);

}  // namespace expsum
