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

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proofsched/error.hpp"

namespace proofsched {

using Location = int;

/// Unordered location pair, always stored as (min, max).
using LocPair = std::pair<Location, Location>;

inline LocPair make_pair_normalized(Location a, Location b) {
  return a < b ? LocPair{a, b} : LocPair{b, a};
}

enum class TermKind : std::uint8_t { Unit, Par, Prefix };

class Term {
 public:
  static Term unit();
  static Term par(Term left, Term right);
  /// polarity is +1 for a positive prefix, -1 for a negative one.
  static Term prefix(std::string name, int polarity, Location location, Term body);

  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  int polarity() const { return node_->polarity; }
  Location location() const { return node_->location; }
  const Term& left() const { return node_->children[0]; }
  const Term& right() const { return node_->children[1]; }
  const Term& body() const { return node_->children[0]; }

  bool is_unit() const { return kind() == TermKind::Unit; }
  bool is_par() const { return kind() == TermKind::Par; }
  bool is_prefix() const { return kind() == TermKind::Prefix; }

  /// Number of prefixes in the tree.
  std::size_t prefix_count() const { return node_->prefixes; }

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermKind kind;
    std::string name;
    int polarity;
    Location location;
    std::vector<Term> children;
    std::size_t prefixes;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Term parse_term(std::string_view text);

/// Locations of all prefixes, in pre-order.
std::vector<Location> locations(const Term& p);

/// The prefix subtree tagged with the location, or nullptr.
const Term* find_prefix(const Term& p, Location l);

/// Prefix-rooted and unit components of the outermost parallel composition,
/// left to right.
std::vector<Term> top_components(const Term& p);

/// Left-associated parallel composition; unit when the list is empty.
Term par_all(const std::vector<Term>& parts);

std::string subject(const Term& p, Location l);
int polarity(const Term& p, Location l);

// ---------------------------------------------------------------------------
// Structural congruence

struct CanonicalPrefix;

/// Sorted multiset of prefix-rooted components; empty for the unit.
struct CanonicalTerm {
  std::vector<CanonicalPrefix> components;

  std::string to_string() const;
  Term to_term() const;
};

struct CanonicalPrefix {
  std::string name;
  int polarity = 1;
  CanonicalTerm body;
  /// -1 when canonicalized without locations.
  Location location = -1;
};

std::strong_ordering operator<=>(const CanonicalTerm& a, const CanonicalTerm& b);
std::strong_ordering operator<=>(const CanonicalPrefix& a, const CanonicalPrefix& b);
bool operator==(const CanonicalTerm& a, const CanonicalTerm& b);
bool operator==(const CanonicalPrefix& a, const CanonicalPrefix& b);

CanonicalTerm canonicalize(const Term& p, bool keep_locations = true);

bool congruent(const Term& p, const Term& q);

// ---------------------------------------------------------------------------
// Action order

class ActionOrder {
 public:
  explicit ActionOrder(const Term& p);

  /// Strict order: m lies in the body of the prefix tagged l.
  bool less(Location l, Location m) const;
  /// (l, m) with m an immediate sub-prefix of l.
  const std::set<LocPair>& covering() const { return covering_; }
  /// Every strict pair (l, m) with l < m in the order, sorted.
  std::set<std::pair<Location, Location>> strict_pairs() const;
  const std::vector<Location>& ancestors(Location m) const;
  /// Locations with no ancestor.
  std::vector<Location> minimal() const;

 private:
  std::map<Location, std::vector<Location>> ancestors_;
  std::set<LocPair> covering_;
};

ActionOrder action_order(const Term& p);

// ---------------------------------------------------------------------------
// Execution

Term step(const Term& p, Location l, Location m);

std::set<LocPair> enabled_pairs(const Term& p);

struct ExecutionTrace {
  Term initial = Term::unit();
  std::vector<LocPair> steps;
  Term final = Term::unit();
};

/// Throws StepError carrying the index of the first step that is not enabled.
ExecutionTrace execute(const Term& p, const std::vector<LocPair>& steps);

// ---------------------------------------------------------------------------
// Pairings

class Pairing {
 public:
  Pairing() = default;
  explicit Pairing(std::set<LocPair> pairs);

  /// Throws InvalidPairing when a location is already used.
  void add(Location a, Location b);
  const std::set<LocPair>& pairs() const { return pairs_; }
  std::optional<Location> partner(Location l) const;
  std::set<Location> domain() const;
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  bool contains(const Pairing& other) const;

  std::string to_string() const;

  auto operator<=>(const Pairing& other) const = default;

 private:
  std::set<LocPair> pairs_;
};

/// Throws InvalidPairing unless every pair joins dual prefixes of the same
/// subject in p.
void check_valid(const Term& p, const Pairing& c);

struct Reachable {
  Pairing pairing;
  CanonicalTerm term;

  auto operator<=>(const Reachable& other) const = default;
};

/// Every (c, Q) with p ->*_c Q, sorted by pairing.
std::vector<Reachable> reachable(const Term& p);

constexpr std::size_t kDefaultPairingCap = 24;

std::vector<Pairing> enumerate_pairings(const Term& p, bool total_only,
                                        std::size_t cap = kDefaultPairingCap);

struct Consistency {
  bool consistent = true;
  /// Location of dom(c) with an ancestor outside dom(c).
  std::optional<Location> not_closed;
  /// Locations along a cycle of the quotient order.
  std::vector<Location> cycle;
};

Consistency is_consistent(const Term& p, const Pairing& c);

std::vector<Pairing> maximal_consistent_subpairings(const Term& p, const Pairing& c);

/// Throws MismatchedInitial when the initial terms are not congruent.
bool permutation_equivalent(const ExecutionTrace& t1, const ExecutionTrace& t2);

}  // namespace proofsched
