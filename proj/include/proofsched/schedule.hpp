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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "proofsched/formula.hpp"
#include "proofsched/process.hpp"
#include "proofsched/proofnet.hpp"
#include "proofsched/translate.hpp"

namespace proofsched {

/// Source-side type variables are open for instantiation; target-side ones
/// are rigid. These are the prefixes used for their names.
inline constexpr const char* kSourceVarPrefix = "v";
inline constexpr const char* kTargetVarPrefix = "w";

/// A modality-free proof of lollipop(type(source), type(target)) with the
/// source variables instantiated by `instantiation`.
struct Schedule {
  Variant variant = Variant::Sync;
  Term source = Term::unit();
  Term target = Term::unit();
  ProofStructure proof;
  Substitution instantiation;
};

/// The conclusion a schedule must have.
Formula schedule_conclusion(const Schedule& s);

/// Throws MalformedStructure when the proof has modality links, fails the
/// correctness criterion, or does not conclude schedule_conclusion(s).
void validate_schedule(const Schedule& s);

/// Throws NotCongruent.
Schedule congruence_schedule(const Term& p, const Term& q, Variant variant);

/// Throws NotEnabled.
Schedule step_schedule(const Term& p, Location l, Location m, Variant variant);

/// Cuts s1 against s2 on their shared middle term. A congruence schedule is
/// inserted when s1.target and s2.source are congruent but not identical.
/// Throws TypeMismatch.
Schedule compose(const Schedule& s1, const Schedule& s2, bool normalize_result = true);

/// Throws StepError carrying the index of the failing step.
Schedule trace_schedule(const Term& p, const std::vector<LocPair>& trace, Variant variant);

struct SearchOptions {
  /// Maximum number of axiom atoms on either side.
  std::size_t cap_atoms = 12;
  /// Maximum number of search nodes explored before giving up.
  std::size_t node_budget = 2000000;
  /// Maximum number of metavariables split into a compound of fresh ones
  /// along one search branch. Unset means 2 for sync and 0 for async.
  std::optional<std::size_t> max_refinements;
};

std::size_t refinement_limit(const SearchOptions& options, Variant variant);

struct SearchStats {
  std::size_t nodes = 0;
};

/// Exhaustive proof search for lollipop(type(p), type(q)). Returns nullopt
/// when no schedule exists; throws CapExceeded when the search is abandoned.
std::optional<Schedule> synthesize(const Term& p, const Term& q, Variant variant,
                                   const SearchOptions& options = {},
                                   SearchStats* stats = nullptr);

/// P => Q: an asynchronous schedule exists.
bool implies(const Term& p, const Term& q, const SearchOptions& options = {});

/// The proof assignment of `source` (instantiated) cut against the schedule,
/// before any cut elimination. The single conclusion is type(target).
ProofStructure cut_against(const Term& p, const Schedule& s);

/// Modality pairs emitted while normalizing cut_against(p, s).
Pairing induced_pairing(const Term& p, const Schedule& s);

/// Asynchronous schedule executing every pair of a consistent maximal
/// pairing in the least accepted order. Throws NotConsistent / NotMaximal.
Schedule pairing_to_schedule(const Term& p, const Pairing& c);

/// Lexicographically least order of the pairs of c accepted by execute, or
/// nullopt when there is none.
std::optional<std::vector<LocPair>> least_accepted_order(const Term& p, const Pairing& c);

/// Normalizes cut_against(p, s) and reads the emitted pairs back as an
/// execution. The emitted order is used when it is executable, otherwise the
/// least accepted order of the same pairs. Throws NotExecutable when no
/// order executes.
ExecutionTrace replay(const Term& p, const Schedule& s);

/// Maximal elements among the consistent pairings of p.
std::vector<Pairing> maximal_consistent_pairings(const Term& p,
                                                 std::size_t cap = kDefaultPairingCap);

}  // namespace proofsched
