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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofsched/formula.hpp"
#include "proofsched/process.hpp"

namespace proofsched {

enum class LinkKind : std::uint8_t { Axiom, Cut, Tensor, Par, ModPos, ModNeg };

std::string_view to_string(LinkKind kind);

struct Link {
  int id = 0;
  LinkKind kind = LinkKind::Axiom;
  std::string channel;
  Location location = -1;
  std::vector<int> premisses;
  std::vector<int> conclusions;

  bool is_modality() const { return kind == LinkKind::ModPos || kind == LinkKind::ModNeg; }
};

/// Consumer value for a wire that is one of the structure's conclusions.
constexpr int kConclusionConsumer = -2;
constexpr int kNone = -1;

struct Wire {
  int id = 0;
  Formula formula = Formula::var("_");
  int producer = kNone;
  /// Link id, kConclusionConsumer, or kNone.
  int consumer = kNone;
  /// Premiss index at the consumer link, or index in the conclusion list.
  int port = -1;
};

class ProofStructure {
 public:
  /// Returns the two conclusion wires of a new axiom link.
  std::pair<int, int> add_axiom(const Formula& left, const Formula& right);
  int add_tensor(int left, int right);
  int add_par(int left, int right);
  int add_modality(LinkKind kind, const std::string& channel, Location location, int premiss);
  int add_cut(int left, int right);
  void add_conclusion(int wire);

  const std::map<int, Link>& links() const { return links_; }
  const std::map<int, Wire>& wires() const { return wires_; }
  const std::vector<int>& conclusions() const { return conclusions_; }
  const Link& link(int id) const;
  const Wire& wire(int id) const;
  const Formula& formula(int wire_id) const { return wire(wire_id).formula; }
  std::vector<Formula> conclusion_formulas() const;

  int next_link_id() const { return links_.empty() ? 0 : links_.rbegin()->first + 1; }
  int next_wire_id() const { return wires_.empty() ? 0 : wires_.rbegin()->first + 1; }

  std::size_t count(LinkKind kind) const;
  std::vector<int> cut_ids() const;
  bool has_modalities() const;
  std::set<Location> locations() const;

  // Low-level editing used by cut elimination, composition and mutation
  // tests. These keep the producer/consumer bookkeeping in sync but do not
  // check typing.
  void remove_link(int id);
  void remove_wire(int id);
  /// Points whatever consumed `from` at `to` instead; `from` loses its consumer.
  void redirect_consumer(int from, int to);
  void set_kind(int link_id, LinkKind kind);
  void set_formula(int wire_id, const Formula& f);
  /// With keep_id the link's own id is used; otherwise the next free one.
  int insert_link(Link link, bool keep_id = false);
  int insert_wire(const Formula& f, int id = kNone);
  void set_conclusions(const std::vector<int>& wires);

  struct ImportMap {
    int link_offset = 0;
    int wire_offset = 0;
  };
  /// Copies every link and wire of `other` with shifted ids. The imported
  /// conclusions are not added to this structure's conclusion list.
  ImportMap import(const ProofStructure& other);

 private:
  std::map<int, Link> links_;
  std::map<int, Wire> wires_;
  std::vector<int> conclusions_;
};

/// Checks arities, port typing and wiring. With allow_open, wires without a
/// producer are tolerated. Throws MalformedStructure.
void validate(const ProofStructure& net, bool allow_open = false);

/// Recomputes the conclusion formulas of tensor, par and modality links from
/// their premisses, walking down from the axioms.
ProofStructure recompute_formulas(const ProofStructure& net);

// ---------------------------------------------------------------------------
// Correctness

enum class DrMethod { Exhaustive, Contraction };

struct DrResult {
  bool ok = true;
  DrMethod method = DrMethod::Exhaustive;
  /// "cycle", "disconnected" or "open premiss" on failure.
  std::string failure;
  /// Par link id -> chosen premiss index of the failing switching.
  std::map<int, int> switching;
  /// Link ids along the cycle when one was found.
  std::vector<int> cycle;
};

constexpr std::uint64_t kDefaultSwitchingCap = std::uint64_t{1} << 22;

/// Exhaustive enumeration while 2^#par fits the cap, contraction otherwise.
DrResult dr_check(const ProofStructure& net, std::uint64_t cap = kDefaultSwitchingCap);
/// Throws CapExceeded when 2^#par exceeds the cap.
DrResult dr_check_exhaustive(const ProofStructure& net,
                             std::uint64_t cap = kDefaultSwitchingCap);
DrResult dr_check_contraction(const ProofStructure& net);

// ---------------------------------------------------------------------------
// Cut elimination

struct CutStep {
  ProofStructure net;
  std::optional<LocPair> pair;
};

CutStep cut_step(const ProofStructure& net, int cut_id);

enum class CutOrder { LowestId, HighestId, Random };

struct NormalizeOptions {
  CutOrder order = CutOrder::LowestId;
  std::uint64_t seed = 0;
  /// Called after every step with the structure before it, the cut id and
  /// the result.
  std::function<void(const ProofStructure&, int, const CutStep&)> observer;
};

struct Normalized {
  ProofStructure net;
  std::vector<LocPair> pairs;
  std::size_t steps = 0;
};

Normalized normalize(const ProofStructure& net, const NormalizeOptions& options = {});

// ---------------------------------------------------------------------------
// Proof order

struct ProofOrder {
  /// (l, m) with l strictly below m.
  std::set<std::pair<Location, Location>> strict;
  std::map<Location, std::string> subject;
  std::map<Location, int> polarity;

  bool less(Location l, Location m) const { return strict.count({l, m}) != 0; }
};

ProofOrder proof_order(const ProofStructure& net);

// ---------------------------------------------------------------------------
// Instantiation

ProofStructure instantiate(const ProofStructure& net, const Substitution& sigma);

/// Replaces every axiom on a tensor or par formula by axioms on its
/// components; modality-rooted and variable axioms are kept.
ProofStructure eta_expand(const ProofStructure& net);

// ---------------------------------------------------------------------------
// Comparison

/// Describes the net independently of wire ids and of the order in which
/// axioms were introduced or eliminated.
std::string net_signature(const ProofStructure& net);

/// For cut-free nets: axiom pairs and modality links described by their
/// position below the conclusions. Link ids are ignored.
std::string positional_signature(const ProofStructure& net, bool with_locations);

}  // namespace proofsched
