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
#include <vector>

#include "proofsched/formula.hpp"
#include "proofsched/process.hpp"
#include "proofsched/proofnet.hpp"

namespace proofsched {

enum class Variant { Sync, Async };

std::string_view to_string(Variant v);
/// Accepts "sync" and "async"; throws Parse otherwise.
Variant parse_variant(std::string_view text);

/// Fresh variables are named <prefix><k>, numbered in post-order: a prefix's
/// body is numbered before the prefix itself, left operands before right.
Formula ttype(const Term& p, Variant variant, const std::string& var_prefix = "v");
Formula ttype_sync(const Term& p);
Formula ttype_async(const Term& p);

struct TypedProcess {
  Term term = Term::unit();
  Variant variant = Variant::Sync;
  Formula type = Formula::var("_");
  ProofStructure proof;
  std::vector<std::string> fresh_vars;
};

TypedProcess proof_assign(const Term& p, Variant variant, const std::string& var_prefix = "v");

constexpr std::size_t kDefaultEnumerationCap = 16;

/// All DR-correct cut-free structures concluding `a` that introduce every
/// connective. With allow_modalities the modalities are introduced by links
/// (located by pre-order occurrence index) and axioms sit on variables;
/// otherwise maximal modality-rooted subformulas are axiom atoms too.
/// Throws CapExceeded when the number of axiom atoms exceeds the cap.
std::vector<ProofStructure> enumerate_cutfree_proofs(const Formula& a, bool allow_modalities,
                                                     std::size_t cap = kDefaultEnumerationCap);

bool compatible(const Term& p, const ProofStructure& net);

/// Keeps the prefixes of p located in the net, releasing the bodies of the
/// others in place. Throws Incompatible.
Term extract_term(const Term& p, const ProofStructure& net);

/// The same filter by an explicit location set.
Term restrict_term(const Term& p, const std::set<Location>& keep);

}  // namespace proofsched
