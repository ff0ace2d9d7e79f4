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

#include "proofsched/proofnet.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace proofsched {

std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::Axiom: return "ax";
    case LinkKind::Cut: return "cut";
    case LinkKind::Tensor: return "tensor";
    case LinkKind::Par: return "par";
    case LinkKind::ModPos: return "mod+";
    case LinkKind::ModNeg: return "mod-";
  }
  return "?";
}

namespace {

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorKind::MalformedStructure, message);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and editing

const Link& ProofStructure::link(int id) const {
  auto it = links_.find(id);
  if (it == links_.end()) malformed("no link " + std::to_string(id));
  return it->second;
}

const Wire& ProofStructure::wire(int id) const {
  auto it = wires_.find(id);
  if (it == wires_.end()) malformed("no wire " + std::to_string(id));
  return it->second;
}

int ProofStructure::insert_wire(const Formula& f, int id) {
  if (id == kNone) id = next_wire_id();
  if (id < 0 || wires_.count(id)) malformed("bad or duplicate wire id " + std::to_string(id));
  Wire w;
  w.id = id;
  w.formula = f;
  wires_.emplace(id, w);
  return id;
}

int ProofStructure::insert_link(Link link, bool keep_id) {
  if (!keep_id) link.id = next_link_id();
  if (link.id < 0 || links_.count(link.id)) {
    malformed("bad or duplicate link id " + std::to_string(link.id));
  }
  for (std::size_t i = 0; i < link.premisses.size(); ++i) {
    Wire& w = wires_.at(link.premisses[i]);
    if (w.consumer != kNone) {
      malformed("wire " + std::to_string(w.id) + " already has a consumer");
    }
    w.consumer = link.id;
    w.port = static_cast<int>(i);
  }
  for (int c : link.conclusions) {
    Wire& w = wires_.at(c);
    if (w.producer != kNone) {
      malformed("wire " + std::to_string(w.id) + " already has a producer");
    }
    w.producer = link.id;
  }
  int id = link.id;
  links_.emplace(id, std::move(link));
  return id;
}

std::pair<int, int> ProofStructure::add_axiom(const Formula& left, const Formula& right) {
  int a = insert_wire(left);
  int b = insert_wire(right);
  Link l;
  l.kind = LinkKind::Axiom;
  l.conclusions = {a, b};
  insert_link(std::move(l));
  return {a, b};
}

int ProofStructure::add_tensor(int left, int right) {
  int out = insert_wire(Formula::tensor(formula(left), formula(right)));
  Link l;
  l.kind = LinkKind::Tensor;
  l.premisses = {left, right};
  l.conclusions = {out};
  insert_link(std::move(l));
  return out;
}

int ProofStructure::add_par(int left, int right) {
  int out = insert_wire(Formula::par(formula(left), formula(right)));
  Link l;
  l.kind = LinkKind::Par;
  l.premisses = {left, right};
  l.conclusions = {out};
  insert_link(std::move(l));
  return out;
}

int ProofStructure::add_modality(LinkKind kind, const std::string& channel, Location location,
                                 int premiss) {
  Formula body = formula(premiss);
  int out = insert_wire(kind == LinkKind::ModPos ? Formula::mod_pos(channel, body)
                                                 : Formula::mod_neg(channel, body));
  Link l;
  l.kind = kind;
  l.channel = channel;
  l.location = location;
  l.premisses = {premiss};
  l.conclusions = {out};
  insert_link(std::move(l));
  return out;
}

int ProofStructure::add_cut(int left, int right) {
  Link l;
  l.kind = LinkKind::Cut;
  l.premisses = {left, right};
  return insert_link(std::move(l));
}

void ProofStructure::add_conclusion(int wire_id) {
  Wire& w = wires_.at(wire_id);
  if (w.consumer != kNone) {
    malformed("wire " + std::to_string(wire_id) + " already has a consumer");
  }
  w.consumer = kConclusionConsumer;
  w.port = static_cast<int>(conclusions_.size());
  conclusions_.push_back(wire_id);
}

void ProofStructure::set_conclusions(const std::vector<int>& wire_ids) {
  for (int c : conclusions_) {
    Wire& w = wires_.at(c);
    w.consumer = kNone;
    w.port = -1;
  }
  conclusions_.clear();
  for (int c : wire_ids) add_conclusion(c);
}

std::vector<Formula> ProofStructure::conclusion_formulas() const {
  std::vector<Formula> out;
  for (int c : conclusions_) out.push_back(formula(c));
  return out;
}

std::size_t ProofStructure::count(LinkKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      links_.begin(), links_.end(), [&](const auto& kv) { return kv.second.kind == kind; }));
}

std::vector<int> ProofStructure::cut_ids() const {
  std::vector<int> out;
  for (const auto& [id, l] : links_) {
    if (l.kind == LinkKind::Cut) out.push_back(id);
  }
  return out;
}

bool ProofStructure::has_modalities() const {
  return std::any_of(links_.begin(), links_.end(),
                     [](const auto& kv) { return kv.second.is_modality(); });
}

std::set<Location> ProofStructure::locations() const {
  std::set<Location> out;
  for (const auto& [id, l] : links_) {
    if (l.is_modality()) out.insert(l.location);
  }
  return out;
}

void ProofStructure::remove_link(int id) {
  auto it = links_.find(id);
  if (it == links_.end()) malformed("no link " + std::to_string(id));
  for (int p : it->second.premisses) {
    auto w = wires_.find(p);
    if (w != wires_.end() && w->second.consumer == id) {
      w->second.consumer = kNone;
      w->second.port = -1;
    }
  }
  for (int c : it->second.conclusions) {
    auto w = wires_.find(c);
    if (w != wires_.end() && w->second.producer == id) w->second.producer = kNone;
  }
  links_.erase(it);
}

void ProofStructure::remove_wire(int id) {
  auto it = wires_.find(id);
  if (it == wires_.end()) return;
  if (it->second.consumer == kConclusionConsumer) {
    malformed("cannot remove conclusion wire " + std::to_string(id));
  }
  wires_.erase(it);
}

void ProofStructure::redirect_consumer(int from, int to) {
  Wire& src = wires_.at(from);
  Wire& dst = wires_.at(to);
  dst.consumer = src.consumer;
  dst.port = src.port;
  if (src.consumer == kConclusionConsumer) {
    conclusions_[static_cast<std::size_t>(src.port)] = to;
  } else if (src.consumer != kNone) {
    links_.at(src.consumer).premisses[static_cast<std::size_t>(src.port)] = to;
  }
  src.consumer = kNone;
  src.port = -1;
}

void ProofStructure::set_kind(int link_id, LinkKind kind) { links_.at(link_id).kind = kind; }

void ProofStructure::set_formula(int wire_id, const Formula& f) {
  wires_.at(wire_id).formula = f;
}

ProofStructure::ImportMap ProofStructure::import(const ProofStructure& other) {
  ImportMap map{next_link_id(), next_wire_id()};
  for (const auto& [id, w] : other.wires_) {
    Wire copy = w;
    copy.id = id + map.wire_offset;
    copy.producer = w.producer >= 0 ? w.producer + map.link_offset : w.producer;
    if (w.consumer >= 0) {
      copy.consumer = w.consumer + map.link_offset;
    } else {
      copy.consumer = kNone;
      copy.port = -1;
    }
    wires_.emplace(copy.id, copy);
  }
  for (const auto& [id, l] : other.links_) {
    Link copy = l;
    copy.id = id + map.link_offset;
    for (int& p : copy.premisses) p += map.wire_offset;
    for (int& c : copy.conclusions) c += map.wire_offset;
    links_.emplace(copy.id, copy);
  }
  return map;
}

// ---------------------------------------------------------------------------
// Validation

void validate(const ProofStructure& net, bool allow_open) {
  std::set<Location> seen_locations;
  for (const auto& [id, l] : net.links()) {
    auto arity = [&](std::size_t in, std::size_t out) {
      if (l.premisses.size() != in || l.conclusions.size() != out) {
        malformed("link " + std::to_string(id) + " (" + std::string(to_string(l.kind)) +
                  ") has wrong arity");
      }
    };
    switch (l.kind) {
      case LinkKind::Axiom: arity(0, 2); break;
      case LinkKind::Cut: arity(2, 0); break;
      case LinkKind::Tensor:
      case LinkKind::Par: arity(2, 1); break;
      case LinkKind::ModPos:
      case LinkKind::ModNeg: arity(1, 1); break;
    }
    for (std::size_t i = 0; i < l.premisses.size(); ++i) {
      const Wire& w = net.wire(l.premisses[i]);
      if (w.consumer != id || w.port != static_cast<int>(i)) {
        malformed("premiss wire " + std::to_string(w.id) + " of link " + std::to_string(id) +
                  " is not wired back");
      }
    }
    for (int c : l.conclusions) {
      if (net.wire(c).producer != id) {
        malformed("conclusion wire " + std::to_string(c) + " of link " + std::to_string(id) +
                  " is not wired back");
      }
    }
    auto in = [&](std::size_t i) { return net.formula(l.premisses[i]); };
    auto out = [&](std::size_t i) { return net.formula(l.conclusions[i]); };
    bool typed = true;
    switch (l.kind) {
      case LinkKind::Axiom: typed = out(1) == negate(out(0)); break;
      case LinkKind::Cut: typed = in(1) == negate(in(0)); break;
      case LinkKind::Tensor: typed = out(0) == Formula::tensor(in(0), in(1)); break;
      case LinkKind::Par: typed = out(0) == Formula::par(in(0), in(1)); break;
      case LinkKind::ModPos: typed = out(0) == Formula::mod_pos(l.channel, in(0)); break;
      case LinkKind::ModNeg: typed = out(0) == Formula::mod_neg(l.channel, in(0)); break;
    }
    if (!typed) {
      malformed("link " + std::to_string(id) + " (" + std::string(to_string(l.kind)) +
                ") is ill-typed");
    }
    if (l.is_modality()) {
      if (l.location < 0) malformed("modality link " + std::to_string(id) + " has no location");
      if (!seen_locations.insert(l.location).second) {
        malformed("location " + std::to_string(l.location) + " labels two modality links");
      }
    }
  }
  for (const auto& [id, w] : net.wires()) {
    if (w.producer == kNone) {
      if (!allow_open) malformed("wire " + std::to_string(id) + " has no producer");
    } else if (net.links().count(w.producer) == 0) {
      malformed("wire " + std::to_string(id) + " has a dangling producer");
    }
    if (w.consumer == kNone) malformed("wire " + std::to_string(id) + " has no consumer");
    if (w.consumer == kConclusionConsumer) {
      const auto& cs = net.conclusions();
      if (w.port < 0 || static_cast<std::size_t>(w.port) >= cs.size() ||
          cs[static_cast<std::size_t>(w.port)] != id) {
        malformed("conclusion wire " + std::to_string(id) + " is not listed");
      }
    } else if (net.links().count(w.consumer) == 0) {
      malformed("wire " + std::to_string(id) + " has a dangling consumer");
    }
  }
}

ProofStructure recompute_formulas(const ProofStructure& net) {
  ProofStructure out = net;
  std::map<int, Formula> memo;
  std::function<Formula(int)> compute = [&](int wire_id) -> Formula {
    auto it = memo.find(wire_id);
    if (it != memo.end()) return it->second;
    const Wire& w = out.wire(wire_id);
    Formula f = w.formula;
    if (w.producer >= 0) {
      const Link& l = out.link(w.producer);
      switch (l.kind) {
        case LinkKind::Tensor:
          f = Formula::tensor(compute(l.premisses[0]), compute(l.premisses[1]));
          break;
        case LinkKind::Par:
          f = Formula::par(compute(l.premisses[0]), compute(l.premisses[1]));
          break;
        case LinkKind::ModPos: f = Formula::mod_pos(l.channel, compute(l.premisses[0])); break;
        case LinkKind::ModNeg: f = Formula::mod_neg(l.channel, compute(l.premisses[0])); break;
        default: break;
      }
    }
    memo.emplace(wire_id, f);
    return f;
  };
  for (const auto& [id, w] : net.wires()) out.set_formula(id, compute(id));
  return out;
}

// ---------------------------------------------------------------------------
// Danos-Regnier

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

// Undirected multigraph view of a structure: one vertex per link and one per
// conclusion, one edge per wire.
struct SwitchGraph {
  std::vector<int> vertex_link;  // link id, or -1 for a conclusion vertex
  std::map<int, std::size_t> index;
  struct Edge {
    std::size_t a, b;
    int par = -1;   // par link id when the wire is a par premiss
    int port = -1;  // premiss index at that par
  };
  std::vector<Edge> edges;
  std::vector<int> pars;
  bool open = false;

  explicit SwitchGraph(const ProofStructure& net) {
    for (const auto& [id, l] : net.links()) {
      index[id] = vertex_link.size();
      vertex_link.push_back(id);
      if (l.kind == LinkKind::Par) pars.push_back(id);
    }
    std::vector<std::size_t> conclusion_vertex;
    for (std::size_t i = 0; i < net.conclusions().size(); ++i) {
      conclusion_vertex.push_back(vertex_link.size());
      vertex_link.push_back(-1);
    }
    for (const auto& [id, w] : net.wires()) {
      if (w.producer == kNone) {
        open = true;
        continue;
      }
      Edge e;
      e.a = index.at(w.producer);
      if (w.consumer == kConclusionConsumer) {
        e.b = conclusion_vertex[static_cast<std::size_t>(w.port)];
      } else {
        e.b = index.at(w.consumer);
        if (net.link(w.consumer).kind == LinkKind::Par) {
          e.par = w.consumer;
          e.port = w.port;
        }
      }
      edges.push_back(e);
    }
  }
};

std::vector<int> find_cycle(const SwitchGraph& g, const std::vector<bool>& active,
                            std::size_t from, std::size_t to) {
  // Path from `from` to `to` through active edges; together with the edge
  // that closed it this is the cycle.
  std::vector<std::vector<std::size_t>> adj(g.vertex_link.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!active[i]) continue;
    adj[g.edges[i].a].push_back(g.edges[i].b);
    adj[g.edges[i].b].push_back(g.edges[i].a);
  }
  std::vector<std::size_t> prev(g.vertex_link.size(), SIZE_MAX);
  std::queue<std::size_t> q;
  q.push(from);
  prev[from] = from;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    if (u == to) break;
    for (std::size_t v : adj[u]) {
      if (prev[v] == SIZE_MAX) {
        prev[v] = u;
        q.push(v);
      }
    }
  }
  std::vector<int> cycle;
  if (prev[to] == SIZE_MAX) return cycle;
  for (std::size_t v = to;; v = prev[v]) {
    cycle.push_back(g.vertex_link[v]);
    if (v == from) break;
  }
  return cycle;
}

}  // namespace

DrResult dr_check_exhaustive(const ProofStructure& net, std::uint64_t cap) {
  validate(net, true);
  DrResult result;
  result.method = DrMethod::Exhaustive;
  SwitchGraph g(net);
  if (g.open) {
    result.ok = false;
    result.failure = "open premiss";
    return result;
  }
  std::size_t n = g.pars.size();
  if (n >= 63 || (std::uint64_t{1} << n) > cap) {
    throw Error(ErrorKind::CapExceeded,
                std::to_string(n) + " par links exceed the switching cap");
  }
  std::map<int, std::size_t> par_bit;
  for (std::size_t i = 0; i < n; ++i) par_bit[g.pars[i]] = i;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    UnionFind uf(g.vertex_link.size());
    std::vector<bool> active(g.edges.size(), false);
    std::size_t merged = 0;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (e.par >= 0 && static_cast<int>((mask >> par_bit[e.par]) & 1u) != e.port) continue;
      if (!uf.unite(e.a, e.b)) {
        result.ok = false;
        result.failure = "cycle";
        for (std::size_t k = 0; k < n; ++k) result.switching[g.pars[k]] = (mask >> k) & 1u;
        result.cycle = find_cycle(g, active, e.a, e.b);
        return result;
      }
      active[i] = true;
      ++merged;
    }
    if (merged + 1 != g.vertex_link.size()) {
      result.ok = false;
      result.failure = "disconnected";
      for (std::size_t k = 0; k < n; ++k) result.switching[g.pars[k]] = (mask >> k) & 1u;
      return result;
    }
  }
  return result;
}

DrResult dr_check_contraction(const ProofStructure& net) {
  validate(net, true);
  DrResult result;
  result.method = DrMethod::Contraction;
  SwitchGraph g(net);
  if (g.open) {
    result.ok = false;
    result.failure = "open premiss";
    return result;
  }
  UnionFind uf(g.vertex_link.size());
  std::map<int, std::array<std::size_t, 2>> par_sources;
  for (const auto& e : g.edges) {
    if (e.par >= 0) {
      par_sources[e.par][static_cast<std::size_t>(e.port)] = e.a;
      continue;
    }
    if (!uf.unite(e.a, e.b)) {
      result.ok = false;
      result.failure = "cycle";
      return result;
    }
  }
  std::vector<int> pending = g.pars;
  bool progress = true;
  while (progress && !pending.empty()) {
    progress = false;
    std::vector<int> rest;
    for (int p : pending) {
      std::size_t cp = uf.find(g.index.at(p));
      std::size_t c0 = uf.find(par_sources[p][0]);
      std::size_t c1 = uf.find(par_sources[p][1]);
      if (c0 == cp || c1 == cp) {
        result.ok = false;
        result.failure = "cycle";
        return result;
      }
      if (c0 == c1) {
        uf.unite(cp, c0);
        progress = true;
      } else {
        rest.push_back(p);
      }
    }
    pending = std::move(rest);
  }
  if (!pending.empty()) {
    result.ok = false;
    result.failure = "not contractible";
    return result;
  }
  std::size_t root = uf.find(0);
  for (std::size_t v = 1; v < g.vertex_link.size(); ++v) {
    if (uf.find(v) != root) {
      result.ok = false;
      result.failure = "disconnected";
      return result;
    }
  }
  return result;
}

DrResult dr_check(const ProofStructure& net, std::uint64_t cap) {
  std::size_t pars = net.count(LinkKind::Par);
  if (pars < 63 && (std::uint64_t{1} << pars) <= cap) return dr_check_exhaustive(net, cap);
  return dr_check_contraction(net);
}

// ---------------------------------------------------------------------------
// Cut elimination

CutStep cut_step(const ProofStructure& net, int cut_id) {
  auto it = net.links().find(cut_id);
  if (it == net.links().end() || it->second.kind != LinkKind::Cut) {
    throw Error(ErrorKind::NotACut, "link " + std::to_string(cut_id) + " is not a cut");
  }
  const Link& cut = it->second;
  int w1 = cut.premisses[0];
  int w2 = cut.premisses[1];
  int p1 = net.wire(w1).producer;
  int p2 = net.wire(w2).producer;
  if (p1 < 0 || p2 < 0) malformed("cut " + std::to_string(cut_id) + " has an open premiss");
  const Link& l1 = net.link(p1);
  const Link& l2 = net.link(p2);

  CutStep out{net, std::nullopt};
  ProofStructure& r = out.net;

  if (l1.kind == LinkKind::Axiom || l2.kind == LinkKind::Axiom) {
    bool first = l1.kind == LinkKind::Axiom;
    const Link& ax = first ? l1 : l2;
    int into_cut = first ? w1 : w2;
    int other = first ? w2 : w1;
    int far = ax.conclusions[0] == into_cut ? ax.conclusions[1] : ax.conclusions[0];
    if (far == other) {
      throw Error(ErrorKind::Internal, "cut on both conclusions of one axiom");
    }
    int ax_id = ax.id;
    r.remove_link(cut_id);
    r.remove_link(ax_id);
    r.redirect_consumer(far, other);
    r.remove_wire(far);
    r.remove_wire(into_cut);
    return out;
  }

  auto is = [](const Link& l, LinkKind k) { return l.kind == k; };
  if ((is(l1, LinkKind::Tensor) && is(l2, LinkKind::Par)) ||
      (is(l1, LinkKind::Par) && is(l2, LinkKind::Tensor))) {
    std::vector<int> a = l1.premisses;
    std::vector<int> b = l2.premisses;
    int id1 = l1.id, id2 = l2.id;
    r.remove_link(cut_id);
    r.remove_link(id1);
    r.remove_link(id2);
    r.remove_wire(w1);
    r.remove_wire(w2);
    r.add_cut(a[0], b[0]);
    r.add_cut(a[1], b[1]);
    return out;
  }

  if (l1.is_modality() && l2.is_modality() && l1.kind != l2.kind && l1.channel == l2.channel) {
    int a = l1.premisses[0];
    int b = l2.premisses[0];
    int id1 = l1.id, id2 = l2.id;
    out.pair = make_pair_normalized(l1.location, l2.location);
    r.remove_link(cut_id);
    r.remove_link(id1);
    r.remove_link(id2);
    r.remove_wire(w1);
    r.remove_wire(w2);
    r.add_cut(a, b);
    return out;
  }

  throw Error(ErrorKind::Clash, "cut " + std::to_string(cut_id) + " joins " +
                                    std::string(to_string(l1.kind)) + " and " +
                                    std::string(to_string(l2.kind)));
}

Normalized normalize(const ProofStructure& net, const NormalizeOptions& options) {
  Normalized result{net, {}, 0};
  std::mt19937_64 rng(options.seed);
  for (;;) {
    std::vector<int> cuts = result.net.cut_ids();
    if (cuts.empty()) break;
    int chosen = cuts.front();
    if (options.order == CutOrder::HighestId) {
      chosen = cuts.back();
    } else if (options.order == CutOrder::Random) {
      std::uniform_int_distribution<std::size_t> pick(0, cuts.size() - 1);
      chosen = cuts[pick(rng)];
    }
    CutStep next = cut_step(result.net, chosen);
    if (options.observer) options.observer(result.net, chosen, next);
    if (next.pair) result.pairs.push_back(*next.pair);
    result.net = std::move(next.net);
    ++result.steps;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Proof order

ProofOrder proof_order(const ProofStructure& net) {
  ProofOrder order;
  for (const auto& [id, l] : net.links()) {
    if (!l.is_modality()) continue;
    order.subject[l.location] = l.channel;
    order.polarity[l.location] = l.kind == LinkKind::ModPos ? 1 : -1;
    std::vector<int> stack(l.premisses.begin(), l.premisses.end());
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      int producer = net.wire(w).producer;
      if (producer < 0) continue;
      const Link& above = net.link(producer);
      if (above.kind == LinkKind::Axiom) continue;
      if (above.is_modality()) order.strict.insert({l.location, above.location});
      stack.insert(stack.end(), above.premisses.begin(), above.premisses.end());
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Instantiation

ProofStructure instantiate(const ProofStructure& net, const Substitution& sigma) {
  ProofStructure out = net;
  if (sigma.empty()) return out;
  for (const auto& [id, w] : net.wires()) out.set_formula(id, sigma.apply(w.formula));
  return out;
}

ProofStructure eta_expand(const ProofStructure& net) {
  ProofStructure out = net;
  std::vector<int> work;
  for (const auto& [id, l] : out.links()) {
    if (l.kind == LinkKind::Axiom) work.push_back(id);
  }
  while (!work.empty()) {
    int id = work.back();
    work.pop_back();
    const Link& ax = out.link(id);
    int w0 = ax.conclusions[0];
    int w1 = ax.conclusions[1];
    Formula f0 = out.formula(w0);
    if (!f0.is_binary()) continue;
    // Orient so that t is the tensor side.
    int t = f0.kind() == FormulaKind::Tensor ? w0 : w1;
    int p = t == w0 ? w1 : w0;
    Formula ft = out.formula(t);
    out.remove_link(id);
    auto [l0, l1] = out.add_axiom(ft.left(), negate(ft.left()));
    auto [r0, r1] = out.add_axiom(ft.right(), negate(ft.right()));
    work.push_back(out.wire(l0).producer);
    work.push_back(out.wire(r0).producer);
    int nt = out.add_tensor(l0, r0);
    int np = out.add_par(l1, r1);
    out.redirect_consumer(t, nt);
    out.redirect_consumer(p, np);
    out.remove_wire(t);
    out.remove_wire(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signatures

namespace {

std::string endpoint(const ProofStructure& net, int wire_id) {
  const Wire& w = net.wire(wire_id);
  if (w.consumer == kConclusionConsumer) return "C" + std::to_string(w.port);
  if (w.consumer == kNone) return "-";
  const Link& l = net.link(w.consumer);
  if (l.kind == LinkKind::Cut) {
    // Cut ids depend on the elimination order; name the cut by its other side.
    int other = l.premisses[0] == wire_id ? l.premisses[1] : l.premisses[0];
    int producer = net.wire(other).producer;
    if (producer >= 0 && net.link(producer).kind != LinkKind::Axiom) {
      return "X" + std::to_string(producer);
    }
    return "X?";
  }
  return "L" + std::to_string(w.consumer) + "." + std::to_string(w.port);
}

}  // namespace

std::string net_signature(const ProofStructure& net) {
  std::vector<std::string> lines;
  for (const auto& [id, l] : net.links()) {
    if (l.kind == LinkKind::Axiom) {
      std::string a = endpoint(net, l.conclusions[0]);
      std::string b = endpoint(net, l.conclusions[1]);
      std::string fa = net.formula(l.conclusions[0]).to_string();
      std::string fb = net.formula(l.conclusions[1]).to_string();
      if (b < a) {
        std::swap(a, b);
        std::swap(fa, fb);
      }
      lines.push_back("A " + a + " " + b + " : " + fa + " , " + fb);
    } else if (l.kind == LinkKind::Cut) {
      lines.push_back("X");
    } else {
      std::string line = "L" + std::to_string(id) + " " + std::string(to_string(l.kind));
      if (l.is_modality()) line += " " + l.channel + " " + std::to_string(l.location);
      line += " -> " + endpoint(net, l.conclusions[0]) + " : " +
              net.formula(l.conclusions[0]).to_string();
      lines.push_back(line);
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& s : lines) out += s + "\n";
  return out;
}

std::string positional_signature(const ProofStructure& net, bool with_locations) {
  std::map<int, std::string> memo;
  std::function<std::string(int)> position = [&](int wire_id) -> std::string {
    auto it = memo.find(wire_id);
    if (it != memo.end()) return it->second;
    const Wire& w = net.wire(wire_id);
    std::string pos;
    if (w.consumer == kConclusionConsumer) {
      pos = "c" + std::to_string(w.port);
    } else if (w.consumer == kNone) {
      pos = "?";
    } else {
      const Link& l = net.link(w.consumer);
      if (l.conclusions.empty()) {
        pos = "cut";
      } else {
        pos = position(l.conclusions[0]) + "." + std::to_string(w.port);
      }
    }
    memo.emplace(wire_id, pos);
    return pos;
  };
  std::vector<std::string> lines;
  for (const auto& [id, l] : net.links()) {
    switch (l.kind) {
      case LinkKind::Axiom: {
        std::string a = position(l.conclusions[0]);
        std::string b = position(l.conclusions[1]);
        if (b < a) std::swap(a, b);
        lines.push_back("A " + a + " " + b);
        break;
      }
      case LinkKind::Cut:
        lines.push_back("X " + position(l.premisses[0]) + " " + position(l.premisses[1]));
        break;
      default: {
        std::string line = std::string(to_string(l.kind)) + " " + position(l.conclusions[0]);
        if (l.is_modality()) {
          line += " " + l.channel;
          if (with_locations) line += " " + std::to_string(l.location);
        }
        lines.push_back(line);
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& s : lines) out += s + "\n";
  return out;
}

}  // namespace proofsched
