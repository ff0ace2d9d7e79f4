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

#include "proofsched/process.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <queue>

namespace proofsched {

Term Term::unit() {
  static const Term u(std::make_shared<const Node>(Node{TermKind::Unit, {}, 0, -1, {}, 0}));
  return u;
}

Term Term::par(Term left, Term right) {
  std::size_t n = left.prefix_count() + right.prefix_count();
  return Term(std::make_shared<const Node>(
      Node{TermKind::Par, {}, 0, -1, {std::move(left), std::move(right)}, n}));
}

Term Term::prefix(std::string name, int polarity, Location location, Term body) {
  if (polarity != 1 && polarity != -1) {
    throw Error(ErrorKind::Internal, "prefix polarity must be +1 or -1");
  }
  std::size_t n = body.prefix_count() + 1;
  return Term(std::make_shared<const Node>(
      Node{TermKind::Prefix, std::move(name), polarity, location, {std::move(body)}, n}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.prefix_count() != b.prefix_count()) return false;
  switch (a.kind()) {
    case TermKind::Unit: return true;
    case TermKind::Par: return a.left() == b.left() && a.right() == b.right();
    case TermKind::Prefix:
      return a.name() == b.name() && a.polarity() == b.polarity() &&
             a.location() == b.location() && a.body() == b.body();
  }
  return false;
}

namespace {

void print_term(const Term& p, std::string& out);

void print_primary(const Term& p, std::string& out) {
  if (p.is_par()) {
    out += '(';
    print_term(p, out);
    out += ')';
  } else {
    print_term(p, out);
  }
}

void print_term(const Term& p, std::string& out) {
  switch (p.kind()) {
    case TermKind::Unit:
      out += '1';
      break;
    case TermKind::Par:
      print_term(p.left(), out);
      out += " | ";
      print_primary(p.right(), out);
      break;
    case TermKind::Prefix:
      if (p.polarity() < 0) out += '~';
      out += p.name();
      out += '^';
      out += std::to_string(p.location());
      if (!p.body().is_unit()) {
        out += '.';
        print_primary(p.body(), out);
      }
      break;
  }
}

}  // namespace

std::string Term::to_string() const {
  std::string out;
  print_term(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct RawPrefix {
  std::string name;
  int polarity;
  std::optional<Location> tag;
  int line, column;
};

// Terms are parsed into a tree with placeholder locations, then tags are
// resolved once every explicit tag is known.
class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = par_chain();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return resolve(t);
  }

 private:
  Term par_chain() {
    Term acc = primary();
    while (peek() == '|') {
      advance();
      acc = Term::par(acc, primary());
    }
    return acc;
  }

  Term primary() {
    char c = peek();
    if (c == '1') {
      advance();
      return Term::unit();
    }
    if (c == '(') {
      advance();
      Term inner = par_chain();
      if (peek() != ')') fail("expected ')'");
      advance();
      return inner;
    }
    if (c == '~' || std::islower(static_cast<unsigned char>(c))) return prefix();
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
  }

  Term prefix() {
    RawPrefix raw{{}, 1, std::nullopt, line_, column_};
    if (peek() == '~') {
      raw.polarity = -1;
      advance();
      skip_space();
    }
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a channel name");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    raw.name = std::string(text_.substr(start, pos_ - start));
    if (peek() == '^') {
      advance();
      skip_space();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected a location number after '^'");
      }
      long value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + (text_[pos_] - '0');
        if (value > 1000000000) fail("location number too large");
        advance();
      }
      raw.tag = static_cast<Location>(value);
    }
    std::size_t index = raws_.size();
    raws_.push_back(raw);
    Term body = Term::unit();
    if (peek() == '.') {
      advance();
      body = primary();
    }
    return Term::prefix(raw.name, raw.polarity, static_cast<Location>(index), body);
  }

  Term resolve(const Term& t) {
    std::set<Location> explicit_tags;
    for (const RawPrefix& r : raws_) {
      if (r.tag && !explicit_tags.insert(*r.tag).second) {
        throw Error(ErrorKind::DuplicateLocation,
                    std::to_string(r.line) + ":" + std::to_string(r.column) +
                        ": duplicate location " + std::to_string(*r.tag));
      }
    }
    final_.resize(raws_.size());
    for (std::size_t i = 0; i < raws_.size(); ++i) {
      const RawPrefix& r = raws_[i];
      if (r.tag) {
        final_[i] = *r.tag;
      } else {
        Location implicit = static_cast<Location>(i + 1);
        if (explicit_tags.count(implicit)) {
          throw Error(ErrorKind::DuplicateLocation,
                      std::to_string(r.line) + ":" + std::to_string(r.column) +
                          ": implicit location " + std::to_string(implicit) +
                          " collides with an explicit tag");
        }
        final_[i] = implicit;
      }
    }
    return relabel(t);
  }

  Term relabel(const Term& t) {
    switch (t.kind()) {
      case TermKind::Unit: return t;
      case TermKind::Par: return Term::par(relabel(t.left()), relabel(t.right()));
      case TermKind::Prefix:
        return Term::prefix(t.name(), t.polarity(),
                            final_[static_cast<std::size_t>(t.location())],
                            relabel(t.body()));
    }
    return t;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(line_, column_, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::vector<RawPrefix> raws_;
  std::vector<Location> final_;
};

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

// ---------------------------------------------------------------------------
// Queries

namespace {

void collect_locations(const Term& p, std::vector<Location>& out) {
  switch (p.kind()) {
    case TermKind::Unit: return;
    case TermKind::Par:
      collect_locations(p.left(), out);
      collect_locations(p.right(), out);
      return;
    case TermKind::Prefix:
      out.push_back(p.location());
      collect_locations(p.body(), out);
      return;
  }
}

void collect_components(const Term& p, std::vector<Term>& out) {
  if (p.is_par()) {
    collect_components(p.left(), out);
    collect_components(p.right(), out);
  } else {
    out.push_back(p);
  }
}

}  // namespace

std::vector<Location> locations(const Term& p) {
  std::vector<Location> out;
  collect_locations(p, out);
  return out;
}

const Term* find_prefix(const Term& p, Location l) {
  switch (p.kind()) {
    case TermKind::Unit: return nullptr;
    case TermKind::Par: {
      const Term* found = find_prefix(p.left(), l);
      return found != nullptr ? found : find_prefix(p.right(), l);
    }
    case TermKind::Prefix:
      return p.location() == l ? &p : find_prefix(p.body(), l);
  }
  return nullptr;
}

std::vector<Term> top_components(const Term& p) {
  std::vector<Term> out;
  collect_components(p, out);
  return out;
}

Term par_all(const std::vector<Term>& parts) {
  if (parts.empty()) return Term::unit();
  Term acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Term::par(acc, parts[i]);
  return acc;
}

namespace {

const Term& require_prefix(const Term& p, Location l) {
  const Term* found = find_prefix(p, l);
  if (found == nullptr) {
    throw Error(ErrorKind::UnknownLocation, "unknown location " + std::to_string(l));
  }
  return *found;
}

}  // namespace

std::string subject(const Term& p, Location l) { return require_prefix(p, l).name(); }

int polarity(const Term& p, Location l) { return require_prefix(p, l).polarity(); }

// ---------------------------------------------------------------------------
// Canonical forms

std::strong_ordering operator<=>(const CanonicalTerm& a, const CanonicalTerm& b) {
  std::size_t n = std::min(a.components.size(), b.components.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.components[i] <=> b.components[i]; c != 0) return c;
  }
  return a.components.size() <=> b.components.size();
}

std::strong_ordering operator<=>(const CanonicalPrefix& a, const CanonicalPrefix& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (auto c = a.polarity <=> b.polarity; c != 0) return c;
  if (auto c = a.body <=> b.body; c != 0) return c;
  return a.location <=> b.location;
}

bool operator==(const CanonicalTerm& a, const CanonicalTerm& b) { return (a <=> b) == 0; }
bool operator==(const CanonicalPrefix& a, const CanonicalPrefix& b) { return (a <=> b) == 0; }

namespace {

void canonical_components(const Term& p, bool keep, std::vector<CanonicalPrefix>& out) {
  switch (p.kind()) {
    case TermKind::Unit: return;
    case TermKind::Par:
      canonical_components(p.left(), keep, out);
      canonical_components(p.right(), keep, out);
      return;
    case TermKind::Prefix: {
      CanonicalPrefix cp;
      cp.name = p.name();
      cp.polarity = p.polarity();
      cp.location = keep ? p.location() : -1;
      cp.body = canonicalize(p.body(), keep);
      out.push_back(std::move(cp));
      return;
    }
  }
}

}  // namespace

CanonicalTerm canonicalize(const Term& p, bool keep_locations) {
  CanonicalTerm out;
  canonical_components(p, keep_locations, out.components);
  std::sort(out.components.begin(), out.components.end());
  return out;
}

bool congruent(const Term& p, const Term& q) { return canonicalize(p) == canonicalize(q); }

Term CanonicalTerm::to_term() const {
  std::vector<Term> parts;
  for (const CanonicalPrefix& cp : components) {
    parts.push_back(Term::prefix(cp.name, cp.polarity, cp.location, cp.body.to_term()));
  }
  return par_all(parts);
}

std::string CanonicalTerm::to_string() const {
  if (components.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const CanonicalPrefix& cp = components[i];
    if (i > 0) out += " | ";
    if (cp.polarity < 0) out += '~';
    out += cp.name;
    if (cp.location >= 0) out += '^' + std::to_string(cp.location);
    if (!cp.body.components.empty()) {
      out += '.';
      bool wrap = cp.body.components.size() > 1;
      if (wrap) out += '(';
      out += cp.body.to_string();
      if (wrap) out += ')';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Action order

namespace {

void build_order(const Term& p, std::vector<Location>& stack,
                 std::map<Location, std::vector<Location>>& ancestors,
                 std::set<LocPair>& covering) {
  switch (p.kind()) {
    case TermKind::Unit: return;
    case TermKind::Par:
      build_order(p.left(), stack, ancestors, covering);
      build_order(p.right(), stack, ancestors, covering);
      return;
    case TermKind::Prefix:
      ancestors[p.location()] = stack;
      if (!stack.empty()) covering.insert({stack.back(), p.location()});
      stack.push_back(p.location());
      build_order(p.body(), stack, ancestors, covering);
      stack.pop_back();
      return;
  }
}

}  // namespace

ActionOrder::ActionOrder(const Term& p) {
  std::vector<Location> stack;
  build_order(p, stack, ancestors_, covering_);
}

bool ActionOrder::less(Location l, Location m) const {
  auto it = ancestors_.find(m);
  if (it == ancestors_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), l) != it->second.end();
}

std::set<std::pair<Location, Location>> ActionOrder::strict_pairs() const {
  std::set<std::pair<Location, Location>> out;
  for (const auto& [m, anc] : ancestors_) {
    for (Location l : anc) out.insert({l, m});
  }
  return out;
}

const std::vector<Location>& ActionOrder::ancestors(Location m) const {
  auto it = ancestors_.find(m);
  if (it == ancestors_.end()) {
    throw Error(ErrorKind::UnknownLocation, "unknown location " + std::to_string(m));
  }
  return it->second;
}

std::vector<Location> ActionOrder::minimal() const {
  std::vector<Location> out;
  for (const auto& [m, anc] : ancestors_) {
    if (anc.empty()) out.push_back(m);
  }
  return out;
}

ActionOrder action_order(const Term& p) { return ActionOrder(p); }

// ---------------------------------------------------------------------------
// Execution

namespace {

// Replaces the top-level prefixes tagged l and m by their bodies.
Term release(const Term& p, Location l, Location m) {
  switch (p.kind()) {
    case TermKind::Unit: return p;
    case TermKind::Par: {
      // A consumed prefix with an empty body leaves no unit behind.
      Term a = release(p.left(), l, m);
      Term b = release(p.right(), l, m);
      if (a.is_unit() && !p.left().is_unit()) return b;
      if (b.is_unit() && !p.right().is_unit()) return a;
      return Term::par(a, b);
    }
    case TermKind::Prefix:
      return p.location() == l || p.location() == m ? p.body() : p;
  }
  return p;
}

std::optional<Term> find_top(const Term& p, Location l) {
  for (const Term& c : top_components(p)) {
    if (c.is_prefix() && c.location() == l) return c;
  }
  return std::nullopt;
}

}  // namespace

Term step(const Term& p, Location l, Location m) {
  require_prefix(p, l);
  require_prefix(p, m);
  std::optional<Term> a = find_top(p, l);
  std::optional<Term> b = find_top(p, m);
  if (!a || !b) {
    throw Error(ErrorKind::NotEnabled,
                "location " + std::to_string(!a ? l : m) + " is guarded");
  }
  if (l == m || a->name() != b->name() || a->polarity() == b->polarity()) {
    throw Error(ErrorKind::NotEnabled, "locations " + std::to_string(l) + " and " +
                                           std::to_string(m) + " are not dual");
  }
  return release(p, l, m);
}

std::set<LocPair> enabled_pairs(const Term& p) {
  std::vector<Term> tops;
  for (const Term& c : top_components(p)) {
    if (c.is_prefix()) tops.push_back(c);
  }
  std::set<LocPair> out;
  for (std::size_t i = 0; i < tops.size(); ++i) {
    for (std::size_t j = i + 1; j < tops.size(); ++j) {
      if (tops[i].name() == tops[j].name() && tops[i].polarity() != tops[j].polarity()) {
        out.insert(make_pair_normalized(tops[i].location(), tops[j].location()));
      }
    }
  }
  return out;
}

ExecutionTrace execute(const Term& p, const std::vector<LocPair>& steps) {
  ExecutionTrace trace;
  trace.initial = p;
  Term cur = p;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto [l, m] = steps[i];
    try {
      cur = step(cur, l, m);
    } catch (const Error& e) {
      throw StepError(i, "step " + std::to_string(i) + ": " + e.what());
    }
    trace.steps.push_back(make_pair_normalized(l, m));
  }
  trace.final = cur;
  return trace;
}

// ---------------------------------------------------------------------------
// Pairings

Pairing::Pairing(std::set<LocPair> pairs) {
  for (auto [a, b] : pairs) add(a, b);
}

void Pairing::add(Location a, Location b) {
  if (a == b) {
    throw Error(ErrorKind::InvalidPairing, "location " + std::to_string(a) + " paired with itself");
  }
  for (auto [x, y] : pairs_) {
    if (x == a || x == b || y == a || y == b) {
      throw Error(ErrorKind::InvalidPairing,
                  "pairs are not disjoint at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  pairs_.insert(make_pair_normalized(a, b));
}

std::optional<Location> Pairing::partner(Location l) const {
  for (auto [a, b] : pairs_) {
    if (a == l) return b;
    if (b == l) return a;
  }
  return std::nullopt;
}

std::set<Location> Pairing::domain() const {
  std::set<Location> out;
  for (auto [a, b] : pairs_) {
    out.insert(a);
    out.insert(b);
  }
  return out;
}

bool Pairing::contains(const Pairing& other) const {
  return std::includes(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end());
}

std::string Pairing::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto [a, b] : pairs_) {
    if (!first) out += ", ";
    first = false;
    out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return out + "}";
}

void check_valid(const Term& p, const Pairing& c) {
  for (auto [a, b] : c.pairs()) {
    const Term* x = find_prefix(p, a);
    const Term* y = find_prefix(p, b);
    if (x == nullptr || y == nullptr) {
      throw Error(ErrorKind::InvalidPairing,
                  "unknown location " + std::to_string(x == nullptr ? a : b) + " in pairing");
    }
    if (x->name() != y->name() || x->polarity() == y->polarity()) {
      throw Error(ErrorKind::InvalidPairing, "locations " + std::to_string(a) + " and " +
                                                 std::to_string(b) + " are not dual");
    }
  }
}

std::vector<Reachable> reachable(const Term& p) {
  std::map<std::set<LocPair>, Term> seen;
  std::queue<std::set<LocPair>> frontier;
  seen.emplace(std::set<LocPair>{}, p);
  frontier.push({});
  while (!frontier.empty()) {
    std::set<LocPair> done = frontier.front();
    frontier.pop();
    Term cur = seen.at(done);
    for (LocPair e : enabled_pairs(cur)) {
      std::set<LocPair> next = done;
      next.insert(e);
      if (seen.count(next)) continue;
      seen.emplace(next, step(cur, e.first, e.second));
      frontier.push(next);
    }
  }
  std::vector<Reachable> out;
  for (const auto& [pairs, term] : seen) {
    out.push_back(Reachable{Pairing(pairs), canonicalize(term)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pairing> enumerate_pairings(const Term& p, bool total_only, std::size_t cap) {
  std::vector<Location> locs = locations(p);
  if (locs.size() > cap) {
    throw Error(ErrorKind::CapExceeded, "term has " + std::to_string(locs.size()) +
                                            " locations, cap is " + std::to_string(cap));
  }
  std::sort(locs.begin(), locs.end());
  std::map<Location, const Term*> prefix_of;
  for (Location l : locs) prefix_of[l] = find_prefix(p, l);

  std::vector<Pairing> out;
  std::set<Location> used;
  std::vector<LocPair> current;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    while (i < locs.size() && used.count(locs[i])) ++i;
    if (i == locs.size()) {
      out.push_back(Pairing(std::set<LocPair>(current.begin(), current.end())));
      return;
    }
    Location l = locs[i];
    used.insert(l);
    if (!total_only) go(i + 1);
    for (std::size_t j = i + 1; j < locs.size(); ++j) {
      Location m = locs[j];
      if (used.count(m)) continue;
      const Term* x = prefix_of[l];
      const Term* y = prefix_of[m];
      if (x->name() != y->name() || x->polarity() == y->polarity()) continue;
      used.insert(m);
      current.push_back({l, m});
      go(i + 1);
      current.pop_back();
      used.erase(m);
    }
    used.erase(l);
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

Consistency is_consistent(const Term& p, const Pairing& c) {
  check_valid(p, c);
  ActionOrder order(p);
  std::set<Location> dom = c.domain();
  Consistency result;
  for (Location m : dom) {
    for (Location l : order.ancestors(m)) {
      if (!dom.count(l)) {
        result.consistent = false;
        result.not_closed = m;
        return result;
      }
    }
  }
  // Quotient graph: one vertex per pair, edge u -> v when some location of u
  // is an immediate predecessor of some location of v.
  std::vector<LocPair> classes(c.pairs().begin(), c.pairs().end());
  std::map<Location, std::size_t> class_of;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    class_of[classes[i].first] = i;
    class_of[classes[i].second] = i;
  }
  struct Edge {
    std::size_t to;
    Location from_loc, to_loc;
  };
  std::vector<std::vector<Edge>> adj(classes.size());
  for (auto [l, m] : order.covering()) {
    if (!dom.count(l) || !dom.count(m)) continue;
    adj[class_of[l]].push_back(Edge{class_of[m], l, m});
  }
  std::vector<int> color(classes.size(), 0);
  std::vector<Edge> path;
  std::function<bool(std::size_t)> dfs = [&](std::size_t u) -> bool {
    color[u] = 1;
    for (const Edge& e : adj[u]) {
      if (color[e.to] == 1) {
        path.push_back(e);
        // Trim the path to the cycle starting at e.to.
        std::size_t start = 0;
        for (std::size_t k = 0; k < path.size(); ++k) {
          if (class_of[path[k].from_loc] == e.to) {
            start = k;
            break;
          }
        }
        std::vector<Location> cyc;
        for (std::size_t k = start; k < path.size(); ++k) {
          cyc.push_back(path[k].from_loc);
          cyc.push_back(path[k].to_loc);
        }
        result.cycle = cyc;
        return true;
      }
      if (color[e.to] == 0) {
        path.push_back(e);
        if (dfs(e.to)) return true;
        path.pop_back();
      }
    }
    color[u] = 2;
    return false;
  };
  for (std::size_t u = 0; u < classes.size(); ++u) {
    if (color[u] == 0 && dfs(u)) {
      result.consistent = false;
      return result;
    }
  }
  return result;
}

std::vector<Pairing> maximal_consistent_subpairings(const Term& p, const Pairing& c) {
  check_valid(p, c);
  std::vector<LocPair> pairs(c.pairs().begin(), c.pairs().end());
  if (pairs.size() > 20) {
    throw Error(ErrorKind::CapExceeded, "pairing too large for subset enumeration");
  }
  std::vector<Pairing> consistent;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::set<LocPair> sub;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask & (1u << i)) sub.insert(pairs[i]);
    }
    Pairing candidate(sub);
    if (is_consistent(p, candidate).consistent) consistent.push_back(candidate);
  }
  std::vector<Pairing> out;
  for (const Pairing& a : consistent) {
    bool maximal = std::none_of(consistent.begin(), consistent.end(), [&](const Pairing& b) {
      return b.size() > a.size() && b.contains(a);
    });
    if (maximal) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool permutation_equivalent(const ExecutionTrace& t1, const ExecutionTrace& t2) {
  if (!congruent(t1.initial, t2.initial)) {
    throw Error(ErrorKind::MismatchedInitial, "traces start from non-congruent terms");
  }
  std::set<LocPair> s1(t1.steps.begin(), t1.steps.end());
  std::set<LocPair> s2(t2.steps.begin(), t2.steps.end());
  if (s1 != s2) return false;
  if (!congruent(t1.final, t2.final)) {
    throw Error(ErrorKind::Internal, "permuted traces end in non-congruent terms");
  }
  return true;
}

}  // namespace proofsched
