// Copyright 2026 The proofsched Authors
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

#include <string>
#include <string_view>

#include <json.hpp>

#include "proofsched/process.hpp"
#include "proofsched/proofnet.hpp"
#include "proofsched/schedule.hpp"

namespace proofsched {

using Json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

Json to_json(const Pairing& c);
/// Accepts an array of two-element arrays; throws Parse on anything else.
Pairing pairing_from_json(const Json& j);
/// Parses "(1,2) (3,4)" or "{(1,2), (3,4)}" as well as JSON arrays.
Pairing parse_pairing(std::string_view text);

Json to_json(const ExecutionTrace& t);

Json to_json(const ProofStructure& net);
/// Wire formulas are taken as given; validate() is the caller's business.
ProofStructure net_from_json(const Json& j);

/// One digraph per structure, links as nodes and wires as edges. Par premiss
/// edges are dashed.
std::string to_dot(const ProofStructure& net, std::string_view name = "net");

Json to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

/// Parses JSON text, mapping syntax errors to ParseError with line/column.
Json parse_json(std::string_view text);

}  // namespace proofsched
