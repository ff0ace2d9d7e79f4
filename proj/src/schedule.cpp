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

#include "proofsched/schedule.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace proofsched {

namespace {

// A position names a subformula of one of the two sides of a schedule: the
// first character selects the side ('0' for the negated source type, '1' for
// the target type), every further character picks a child. Positions are
// read through the current instantiation, so they may reach into the image
// of an instantiated variable.
using Pos = std::string;

bool is_prefix_of(const Pos& a, const Pos& b) {
  return a.size() < b.size() && b.compare(0, a.size(), a) == 0;
}

Formula child(const Formula& f, char c) {
  if (f.is_binary()) return c == '0' ? f.left() : f.right();
  return f.body();
}

Formula formula_at(const Formula roots[2], const Pos& p, const Substitution& sigma) {
  Formula f = resolve_head(roots[p[0] - '0'], sigma);
  for (std::size_t i = 1; i < p.size(); ++i) f = resolve_head(child(f, p[i]), sigma);
  return f;
}

struct Skeleton {
  Variant variant = Variant::Sync;
  Term source = Term::unit();
  Term target = Term::unit();
  std::set<Pos> decomposed;
  std::vector<std::pair<Pos, Pos>> axioms;
};

struct Sides {
  Formula roots[2];
  VarSet open;

  Sides(const Term& p, const Term& q, Variant variant)
      : roots{negate(ttype(p, variant, kSourceVarPrefix)), ttype(q, variant, kTargetVarPrefix)},
        open(variables(roots[0])) {}
};

// Builds the proof structure of a skeleton. The instantiation is computed by
// unifying the axiom endpoints in order unless one is given.
Schedule realize(const Skeleton& skel, const Substitution* given = nullptr) {
  Sides sides(skel.source, skel.target, skel.variant);
  Substitution sigma;
  if (given != nullptr) {
    sigma = *given;
  } else {
    std::vector<std::string> trail;
    for (const auto& [a, b] : skel.axioms) {
      ErrorKind failure = ErrorKind::Clash;
      if (!unify_dual_in_place(formula_at(sides.roots, a, sigma),
                               formula_at(sides.roots, b, sigma), sigma, sides.open, trail,
                               &failure)) {
        throw Error(ErrorKind::Internal, "schedule axiom " + a + "/" + b + " does not unify");
      }
    }
  }
  sigma = sigma.normalized();
  // Search may introduce its own metavariables; only the source's are kept.
  for (auto it = sigma.bindings().begin(); it != sigma.bindings().end();) {
    std::string name = (it++)->first;
    if (!sides.open.count(name)) sigma.unbind(name);
  }
  Formula applied[2] = {sigma.apply(sides.roots[0]), sigma.apply(sides.roots[1])};
  Substitution none;

  Schedule out;
  out.variant = skel.variant;
  out.source = skel.source;
  out.target = skel.target;
  out.instantiation = sigma;
  ProofStructure& net = out.proof;
  std::map<Pos, int> endpoint;
  for (const auto& [a, b] : skel.axioms) {
    auto [wa, wb] = net.add_axiom(formula_at(applied, a, none), formula_at(applied, b, none));
    endpoint[a] = wa;
    endpoint[b] = wb;
  }
  std::function<int(const Pos&)> build = [&](const Pos& p) -> int {
    if (skel.decomposed.count(p)) {
      Formula f = formula_at(applied, p, none);
      int l = build(p + '0');
      int r = build(p + '1');
      return f.kind() == FormulaKind::Tensor ? net.add_tensor(l, r) : net.add_par(l, r);
    }
    auto it = endpoint.find(p);
    if (it == endpoint.end()) {
      throw Error(ErrorKind::Internal, "schedule position " + p + " is not covered");
    }
    return it->second;
  };
  int left = build("0");
  int right = build("1");
  net.add_conclusion(net.add_par(left, right));
  return out;
}

// Removes the root par of a single-conclusion structure; its two premisses
// become the conclusions.
void strip_root_par(ProofStructure& net) {
  int c = net.conclusions().at(0);
  int root = net.wire(c).producer;
  const Link& l = net.link(root);
  if (l.kind != LinkKind::Par) throw Error(ErrorKind::Internal, "schedule root is not a par");
  std::vector<int> prem = l.premisses;
  net.remove_link(root);
  net.set_conclusions(prem);
  net.remove_wire(c);
}

// ---------------------------------------------------------------------------
// Congruence

struct CongruenceBuilder {
  Skeleton& skel;
  Variant variant;
  std::vector<std::pair<Pos, Pos>> source_units;

  // Same type up to the names of the fresh variables.
  // Types carry no locations, so equal types alone could swap two prefixes
  // with the same subject and polarity.
  static bool same_shape(const Term& p, const Term& q, Variant v) {
    return locations(p) == locations(q) && ttype(p, v, "x") == ttype(q, v, "x");
  }

  void components(const Term& t, const Pos& pos, std::vector<std::pair<Pos, Term>>& out) {
    if (t.is_par()) {
      skel.decomposed.insert(pos);
      components(t.left(), pos + '0', out);
      components(t.right(), pos + '1', out);
    } else {
      out.push_back({pos, t});
    }
  }

  void run(const Pos& sp, const Term& p, const Pos& tp, const Term& q) {
    if (same_shape(p, q, variant)) {
      skel.axioms.push_back({sp, tp});
      return;
    }
    std::vector<std::pair<Pos, Term>> sc, tc;
    components(p, sp, sc);
    components(q, tp, tc);
    std::map<Location, std::pair<Pos, Term>> target_prefix;
    for (const auto& [pos, t] : tc) {
      if (t.is_unit()) {
        skel.decomposed.insert(pos);
        skel.axioms.push_back({pos + '0', pos + '1'});
      } else {
        target_prefix.emplace(t.location(), std::make_pair(pos, t));
      }
    }
    for (const auto& [pos, t] : sc) {
      if (t.is_unit()) {
        skel.decomposed.insert(pos);
        source_units.push_back({pos + '0', pos + '1'});
        continue;
      }
      auto it = target_prefix.find(t.location());
      if (it == target_prefix.end()) {
        throw Error(ErrorKind::NotCongruent, "location " + std::to_string(t.location()) +
                                                 " has no counterpart");
      }
      prefix_pair(pos, t, it->second.first, it->second.second);
    }
  }

  void prefix_pair(const Pos& sp, const Term& p, const Pos& tp, const Term& q) {
    if (same_shape(p, q, variant)) {
      skel.axioms.push_back({sp, tp});
      return;
    }
    if (variant == Variant::Sync) {
      throw Error(ErrorKind::NotCongruent,
                  "synchronous types of " + p.to_string() + " and " + q.to_string() +
                      " differ under the prefix");
    }
    skel.decomposed.insert(sp);
    skel.decomposed.insert(tp);
    if (p.polarity() > 0) {
      // negated source: <a>- a (x) (P^ @ a^); target: <a>+ a^ @ (Q (x) a)
      skel.decomposed.insert(sp + '1');
      skel.decomposed.insert(tp + '1');
      skel.axioms.push_back({sp + '0', tp + '0'});
      skel.axioms.push_back({sp + "11", tp + "11"});
      run(sp + "10", p.body(), tp + "10", q.body());
    } else {
      // negated source: (P^ @ a) (x) <a>+ a^; target: (Q (x) a^) @ <a>- a
      skel.decomposed.insert(sp + '0');
      skel.decomposed.insert(tp + '0');
      skel.axioms.push_back({sp + "01", tp + "01"});
      skel.axioms.push_back({sp + '1', tp + '1'});
      run(sp + "00", p.body(), tp + "00", q.body());
    }
  }
};

// Chains every source unit into the axiom at `index`.
Skeleton thread_units(const Skeleton& skel, const std::vector<std::pair<Pos, Pos>>& units,
                      std::size_t index) {
  Skeleton out = skel;
  auto [e1, e2] = out.axioms[index];
  out.axioms.erase(out.axioms.begin() + static_cast<std::ptrdiff_t>(index));
  Pos last = e1;
  for (const auto& [a, a_dual] : units) {
    out.axioms.push_back({last, a});
    last = a_dual;
  }
  out.axioms.push_back({last, e2});
  return out;
}

Schedule finish_with_units(const Skeleton& skel, const std::vector<std::pair<Pos, Pos>>& units) {
  if (units.empty()) return realize(skel);
  for (std::size_t i = 0; i < skel.axioms.size(); ++i) {
    Schedule s = realize(thread_units(skel, units, i));
    if (dr_check(s.proof).ok) return s;
  }
  throw Error(ErrorKind::Internal, "no axiom accepts the source units");
}

}  // namespace

Formula schedule_conclusion(const Schedule& s) {
  return s.instantiation.apply(lollipop(ttype(s.source, s.variant, kSourceVarPrefix),
                                        ttype(s.target, s.variant, kTargetVarPrefix)));
}

void validate_schedule(const Schedule& s) {
  validate(s.proof);
  if (s.proof.has_modalities()) {
    throw Error(ErrorKind::MalformedStructure, "schedule proof contains modality links");
  }
  if (s.proof.conclusions().size() != 1 ||
      !(s.proof.formula(s.proof.conclusions()[0]) == schedule_conclusion(s))) {
    throw Error(ErrorKind::MalformedStructure, "schedule proof has the wrong conclusion");
  }
  VarSet open = variables(ttype(s.source, s.variant, kSourceVarPrefix));
  for (const auto& [name, value] : s.instantiation.bindings()) {
    if (!open.count(name)) {
      throw Error(ErrorKind::MalformedStructure, "instantiation binds non-source variable " + name);
    }
  }
  DrResult dr = dr_check(s.proof);
  if (!dr.ok) {
    throw Error(ErrorKind::MalformedStructure, "schedule proof fails the correctness criterion (" +
                                                   dr.failure + ")");
  }
}

Schedule congruence_schedule(const Term& p, const Term& q, Variant variant) {
  if (!congruent(p, q)) {
    throw Error(ErrorKind::NotCongruent, p.to_string() + " is not congruent to " + q.to_string());
  }
  Skeleton skel{variant, p, q, {}, {}};
  CongruenceBuilder b{skel, variant, {}};
  b.run("0", p, "1", q);
  return finish_with_units(skel, b.source_units);
}

namespace {
// One step for a term of the shape (x | y) | R, x positive.
// The paper-figure step for a term of the shape (x | y) | R, x positive.
Schedule step_core(const Term& x, const Term& y, const std::optional<Term>& rest,
                   Variant variant) {
  Skeleton skel;
  skel.variant = variant;
  Term front = Term::par(x, y);
  Term after = Term::par(x.body(), y.body());
  if (rest) {
    front = Term::par(front, *rest);
    after = Term::par(after, *rest);
  }
  skel.source = front;
  skel.target = after;
  Pos base = rest ? "00" : "0";
  Pos tbase = rest ? "10" : "1";
  skel.decomposed.insert("0");
  if (rest) {
    skel.decomposed.insert("00");
    skel.decomposed.insert("1");
    skel.axioms.push_back({"01", "11"});
  }
  if (variant == Variant::Sync) {
    skel.decomposed.insert(base + '1');
    skel.axioms.push_back({base + '0', base + "10"});
    skel.axioms.push_back({base + "11", tbase});
  } else {
    skel.decomposed.insert(base + '0');
    skel.decomposed.insert(base + '1');
    skel.decomposed.insert(base + "10");
    skel.axioms.push_back({base + "00", base + "11"});
    skel.axioms.push_back({base + "01", tbase});
    skel.axioms.push_back({base + "100", base + "101"});
  }
  return realize(skel);
}

}  // namespace

Schedule step_schedule(const Term& p, Location l, Location m, Variant variant) {
  Term after = step(p, l, m);
  std::vector<Term> comps = top_components(p);
  std::optional<Term> pos, neg;
  std::vector<Term> rest;
  for (const Term& c : comps) {
    if (c.is_prefix() && (c.location() == l || c.location() == m)) {
      (c.polarity() > 0 ? pos : neg) = c;
    } else {
      rest.push_back(c);
    }
  }
  std::optional<Term> r;
  if (!rest.empty()) r = par_all(rest);
  Term front = r ? Term::par(Term::par(*pos, *neg), *r) : Term::par(*pos, *neg);
  Schedule core = step_core(*pos, *neg, r, variant);
  Schedule acc = core;
  if (!(front == p)) acc = compose(congruence_schedule(p, front, variant), core);
  if (!(core.target == after)) acc = compose(acc, congruence_schedule(core.target, after, variant));
  return acc;
}

namespace {

std::set<std::string> proof_variables(const ProofStructure& net) {
  std::set<std::string> out;
  for (const auto& [id, w] : net.wires()) collect_variables(w.formula, out);
  return out;
}

}  // namespace

Schedule compose(const Schedule& s1, const Schedule& s2, bool normalize_result) {
  if (s1.variant != s2.variant) {
    throw Error(ErrorKind::TypeMismatch, "cannot compose schedules of different variants");
  }
  if (!(s1.target == s2.source)) {
    if (!congruent(s1.target, s2.source)) {
      throw Error(ErrorKind::TypeMismatch, "schedule target " + s1.target.to_string() +
                                               " does not match source " +
                                               s2.source.to_string());
    }
    return compose(s1, compose(congruence_schedule(s1.target, s2.source, s1.variant), s2,
                               normalize_result),
                   normalize_result);
  }
  // Unbound source variables of s2 become fresh rigid names.
  std::set<std::string> used = proof_variables(s1.proof);
  for (const auto& n : proof_variables(s2.proof)) used.insert(n);
  VarSet mid_vars = variables(ttype(s2.source, s2.variant, kSourceVarPrefix));
  Substitution rho;
  int counter = 0;
  for (const auto& v : mid_vars) {
    if (s2.instantiation.contains(v)) continue;
    std::string fresh;
    do {
      fresh = "u" + std::to_string(counter++);
    } while (used.count(fresh));
    used.insert(fresh);
    rho.bind(v, Formula::var(fresh));
  }
  ProofStructure right = instantiate(s2.proof, rho);
  // theta sends the middle term's target names of s1 to what s2 made of them.
  Substitution theta;
  for (const auto& v : mid_vars) {
    std::string w = kTargetVarPrefix + v.substr(std::string(kSourceVarPrefix).size());
    theta.bind(w, rho.apply(s2.instantiation.apply(Formula::var(v))));
  }
  ProofStructure left = s1.proof;
  for (const auto& [id, w] : s1.proof.wires()) {
    left.set_formula(id, theta.apply_simultaneous(w.formula));
  }

  strip_root_par(left);
  strip_root_par(right);
  int x = left.conclusions()[0];
  int y = left.conclusions()[1];
  auto map = left.import(right);
  int y2 = right.conclusions()[0] + map.wire_offset;
  int z = right.conclusions()[1] + map.wire_offset;
  left.set_conclusions({});
  left.add_cut(y, y2);
  left.add_conclusion(left.add_par(x, z));

  Schedule out;
  out.variant = s1.variant;
  out.source = s1.source;
  out.target = s2.target;
  Substitution sigma;
  for (const auto& [name, value] : s1.instantiation.bindings()) {
    sigma.bind(name, theta.apply_simultaneous(value));
  }
  out.instantiation = sigma.normalized();
  out.proof = normalize_result ? normalize(left).net : std::move(left);
  return out;
}

Schedule trace_schedule(const Term& p, const std::vector<LocPair>& trace, Variant variant) {
  Schedule acc = congruence_schedule(p, p, variant);
  Term cur = p;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    Schedule s = [&] {
      try {
        return step_schedule(cur, trace[i].first, trace[i].second, variant);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotEnabled) throw;
        throw StepError(i, "step " + std::to_string(i) + ": " + e.what());
      }
    }();
    acc = i == 0 ? s : compose(acc, s);
    cur = s.target;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Search

namespace {

// Pseudo-targets marking a refinement option; never valid positions.
const Pos kRefineTensor = "*";
const Pos kRefinePar = "@";
constexpr const char* kRefineVarPrefix = "r";

class Search {
 public:
  Search(const Term& p, const Term& q, Variant variant, const SearchOptions& options)
      : sides_(p, q, variant), options_(options) {
    skel_.variant = variant;
    skel_.source = p;
    skel_.target = q;
    collect_components("0", FormulaKind::Par);
    collect_components("1", FormulaKind::Tensor);
  }

  // Searches without refinement first, then allows one more split per round.
  std::optional<Schedule> run() {
    std::size_t max = refinement_limit(options_, skel_.variant);
    for (limit_ = 0; limit_ <= max; ++limit_) {
      if (solve()) return finish();
    }
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  enum class AtomKind { Modality, Rigid, Meta };

  struct Scan {
    std::vector<Pos> atoms;
    std::vector<Pos> compounds;  // undecided, uncovered
  };

  Formula at(const Pos& p) const { return formula_at(sides_.roots, p, sigma_); }

  AtomKind classify(const Formula& f) const {
    if (f.is_modality()) return AtomKind::Modality;
    return sides_.open.count(f.name()) ? AtomKind::Meta : AtomKind::Rigid;
  }

  void scan(const Pos& p, Scan& out) const {
    if (linked_.count(p)) return;
    Formula f = at(p);
    if (f.is_binary()) {
      if (!decomposed_.count(p)) out.compounds.push_back(p);
      scan(p + '0', out);
      scan(p + '1', out);
    } else {
      out.atoms.push_back(p);
    }
  }

  bool unifies(const Pos& a, const Pos& b) {
    std::size_t mark = trail_.size();
    bool ok = unify_dual_in_place(at(a), at(b), sigma_, sides_.open, trail_);
    undo_sigma(mark);
    return ok;
  }

  void undo_sigma(std::size_t mark) {
    while (trail_.size() > mark) {
      sigma_.unbind(trail_.back());
      trail_.pop_back();
    }
  }

  // Parallel components of either side. Two components that are untouched
  // and equal up to their own variables can be swapped without changing the
  // search state, so links into the second are skipped.
  struct Component {
    Pos root;
    std::string shape;
    VarSet vars;
  };

  void collect_components(const Pos& p, FormulaKind join) {
    Formula f = formula_at(sides_.roots, p, Substitution());
    if (f.kind() == join) {
      collect_components(p + '0', join);
      collect_components(p + '1', join);
      return;
    }
    std::map<std::string, std::string> names;
    std::function<Formula(const Formula&)> rename = [&](const Formula& g) -> Formula {
      switch (g.kind()) {
        case FormulaKind::Var:
        case FormulaKind::DualVar: {
          auto it = names.emplace(g.name(), "x" + std::to_string(names.size())).first;
          return g.kind() == FormulaKind::Var ? Formula::var(it->second)
                                               : Formula::dual_var(it->second);
        }
        case FormulaKind::Tensor: return Formula::tensor(rename(g.left()), rename(g.right()));
        case FormulaKind::Par: return Formula::par(rename(g.left()), rename(g.right()));
        case FormulaKind::ModPos: return Formula::mod_pos(g.name(), rename(g.body()));
        case FormulaKind::ModNeg: return Formula::mod_neg(g.name(), rename(g.body()));
      }
      return g;
    };
    components_.push_back({p, rename(f).to_string(), variables(f)});
  }

  const Component* component_of(const Pos& p) const {
    for (const Component& c : components_) {
      if (c.root == p || is_prefix_of(c.root, p)) return &c;
    }
    return nullptr;
  }

  bool untouched(const Component& c) const {
    if (decomposed_.count(c.root)) return false;
    for (const auto& [pos, other] : linked_) {
      if (pos == c.root || is_prefix_of(c.root, pos)) return false;
    }
    for (const std::string& v : c.vars) {
      if (sigma_.contains(v)) return false;
    }
    return true;
  }

  bool symmetric_to_earlier(const Pos& e, const Pos& target,
                            const std::vector<std::pair<Pos, Pos>>& kept) const {
    const Component* c = component_of(target);
    if (c == nullptr || c == component_of(e) || !untouched(*c)) return false;
    Pos rel = target.substr(c->root.size());
    for (const auto& [a, b] : kept) {
      if (a != e || b.size() < 1 || b == kRefineTensor || b == kRefinePar) continue;
      const Component* d = component_of(b);
      if (d == nullptr || d == c || d == component_of(e) || d->shape != c->shape ||
          d->root[0] != c->root[0] || b.substr(d->root.size()) != rel || !untouched(*d)) {
        continue;
      }
      return true;
    }
    return false;
  }

  std::vector<std::pair<Pos, Pos>> options_for(const Pos& e, const Scan& s) {
    std::vector<std::pair<Pos, Pos>> out;
    bool meta = classify(at(e)) == AtomKind::Meta;
    for (const Pos& f : s.atoms) {
      if (f != e && unifies(e, f) && !symmetric_to_earlier(e, f, out)) out.push_back({e, f});
    }
    if (meta) {
      for (const Pos& a : s.compounds) {
        if (!is_prefix_of(a, e) && unifies(e, a) && !symmetric_to_earlier(e, a, out)) {
          out.push_back({e, a});
        }
      }
    }
    for (const Pos& a : s.compounds) {
      if (!is_prefix_of(a, e)) continue;
      for (const Pos& x : s.atoms) {
        if (x == e || is_prefix_of(a, x) || classify(at(x)) != AtomKind::Meta) continue;
        if (unifies(a, x)) out.push_back({a, x});
      }
    }
    // e may also end up linked inside a metavariable that is later split into
    // a compound. That metavariable cannot occur in e.
    if (refinements_ < limit_) {
      VarSet inside = variables(sigma_.apply(at(e)));
      std::set<std::string> seen;
      for (const Pos& x : s.atoms) {
        Formula f = at(x);
        if (classify(f) != AtomKind::Meta || inside.count(f.name()) ||
            !seen.insert(f.name()).second) {
          continue;
        }
        out.push_back({x, kRefineTensor});
        out.push_back({x, kRefinePar});
      }
    }
    return out;
  }

  // Binds the metavariable at p to a tensor or par of two fresh ones.
  void refine(const Pos& p, bool tensor) {
    Formula f = at(p);
    Formula x = Formula::var(kRefineVarPrefix + std::to_string(fresh_++));
    Formula y = Formula::var(kRefineVarPrefix + std::to_string(fresh_++));
    sides_.open.insert(x.name());
    sides_.open.insert(y.name());
    Formula image = tensor ? Formula::tensor(x, y) : Formula::par(x, y);
    sigma_.bind(f.name(), f.kind() == FormulaKind::Var ? image : negate(image));
    trail_.push_back(f.name());
  }

  bool solve() {
    if (++nodes_ > options_.node_budget) {
      throw Error(ErrorKind::CapExceeded,
                  "search exceeded " + std::to_string(options_.node_budget) + " nodes");
    }
    Scan s;
    scan("0", s);
    scan("1", s);
    if (s.atoms.empty()) return contract(true);

    // Most constrained atom first; ties go to modalities, then rigid
    // variables, then position order.
    std::vector<std::pair<Pos, Pos>> best;
    bool have = false;
    int best_rank = 0;
    for (const Pos& e : s.atoms) {
      int rank = static_cast<int>(classify(at(e)));
      if (have && rank > best_rank && best.size() <= 1) continue;
      auto opts = options_for(e, s);
      if (opts.empty()) return false;
      if (!have || opts.size() < best.size() ||
          (opts.size() == best.size() && rank < best_rank)) {
        best = std::move(opts);
        best_rank = rank;
        have = true;
      }
    }
    for (const auto& [a, b] : best) {
      std::size_t mark = trail_.size();
      if (b == kRefineTensor || b == kRefinePar) {
        refine(a, b == kRefineTensor);
        ++refinements_;
        bool found = solve();
        --refinements_;
        if (found) return true;
        undo_sigma(mark);
        continue;
      }
      if (!unify_dual_in_place(at(a), at(b), sigma_, sides_.open, trail_)) {
        undo_sigma(mark);
        continue;
      }
      std::vector<Pos> added;
      for (const Pos* end : {&a, &b}) {
        for (std::size_t len = 1; len < end->size(); ++len) {
          Pos anc = end->substr(0, len);
          if (decomposed_.insert(anc).second) added.push_back(anc);
        }
      }
      linked_[a] = b;
      linked_[b] = a;
      axioms_.push_back({a, b});
      if (contract(false) && solve()) return true;
      axioms_.pop_back();
      linked_.erase(a);
      linked_.erase(b);
      for (const Pos& d : added) decomposed_.erase(d);
      undo_sigma(mark);
    }
    return false;
  }

  // Contraction criterion on the partial structure. Undecided positions are
  // open leaves, so only cycles can be detected until the structure is
  // complete.
  bool contract(bool complete) const {
    std::map<Pos, std::size_t> link_vertex;
    std::size_t n = 0;
    std::size_t root = n++;
    for (const Pos& p : decomposed_) link_vertex[p] = n++;
    std::map<Pos, std::size_t> axiom_vertex;
    for (const auto& [a, b] : axioms_) {
      axiom_vertex[a] = n;
      axiom_vertex[b] = n;
      ++n;
    }
    struct Edge {
      std::size_t from, to;
      bool par;
      int port;
    };
    std::vector<Edge> edges;
    bool open = false;
    auto vertex_of = [&](const Pos& c) {
      if (auto it = link_vertex.find(c); it != link_vertex.end()) return it->second;
      if (auto it = axiom_vertex.find(c); it != axiom_vertex.end()) return it->second;
      open = true;
      return n++;
    };
    edges.push_back({vertex_of("0"), root, true, 0});
    edges.push_back({vertex_of("1"), root, true, 1});
    std::vector<std::size_t> pars{root};
    for (const Pos& p : decomposed_) {
      bool par = at(p).kind() == FormulaKind::Par;
      std::size_t v = link_vertex.at(p);
      if (par) pars.push_back(v);
      edges.push_back({vertex_of(p + '0'), v, par, 0});
      edges.push_back({vertex_of(p + '1'), v, par, 1});
    }
    if (complete && open) return false;
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::map<std::size_t, std::array<std::size_t, 2>> sources;
    for (const Edge& e : edges) {
      if (e.par) {
        sources[e.to][static_cast<std::size_t>(e.port)] = e.from;
        continue;
      }
      std::size_t a = find(e.from), b = find(e.to);
      if (a == b) return false;
      parent[a] = b;
    }
    std::vector<std::size_t> pending = pars;
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      std::vector<std::size_t> rest;
      for (std::size_t p : pending) {
        std::size_t cp = find(p);
        std::size_t c0 = find(sources[p][0]);
        std::size_t c1 = find(sources[p][1]);
        if (c0 == cp || c1 == cp) return false;
        if (c0 == c1) {
          parent[cp] = c0;
          progress = true;
        } else {
          rest.push_back(p);
        }
      }
      pending = std::move(rest);
    }
    if (!complete) return true;
    if (!pending.empty()) return false;
    std::size_t r = find(0);
    for (std::size_t i = 1; i < n; ++i) {
      if (find(i) != r) return false;
    }
    return true;
  }

  Schedule finish() {
    Skeleton skel = skel_;
    skel.decomposed = decomposed_;
    skel.axioms = axioms_;
    Schedule s = realize(skel, &sigma_);
    validate_schedule(s);
    return s;
  }

  Sides sides_;
  SearchOptions options_;
  Skeleton skel_;
  Substitution sigma_;
  std::vector<std::string> trail_;
  std::set<Pos> decomposed_;
  std::map<Pos, Pos> linked_;
  std::vector<std::pair<Pos, Pos>> axioms_;
  std::size_t nodes_ = 0;
  std::vector<Component> components_;
  std::size_t refinements_ = 0;
  std::size_t limit_ = 0;
  std::size_t fresh_ = 0;
};

std::size_t atom_count(const Formula& f) {
  if (f.is_binary()) return atom_count(f.left()) + atom_count(f.right());
  return 1;
}

}  // namespace

std::size_t refinement_limit(const SearchOptions& options, Variant variant) {
  if (options.max_refinements) return *options.max_refinements;
  return variant == Variant::Sync ? 2 : 0;
}

std::optional<Schedule> synthesize(const Term& p, const Term& q, Variant variant,
                                   const SearchOptions& options, SearchStats* stats) {
  for (const Term* t : {&p, &q}) {
    std::size_t atoms = atom_count(ttype(*t, variant));
    if (atoms > options.cap_atoms) {
      throw Error(ErrorKind::CapExceeded, t->to_string() + " has " + std::to_string(atoms) +
                                              " axiom atoms, cap is " +
                                              std::to_string(options.cap_atoms));
    }
  }
  Search search(p, q, variant, options);
  std::optional<Schedule> out;
  try {
    out = search.run();
  } catch (...) {
    if (stats != nullptr) stats->nodes = search.nodes();
    throw;
  }
  if (stats != nullptr) stats->nodes = search.nodes();
  return out;
}

bool implies(const Term& p, const Term& q, const SearchOptions& options) {
  return synthesize(p, q, Variant::Async, options).has_value();
}

// ---------------------------------------------------------------------------
// Replay and pairings

ProofStructure cut_against(const Term& p, const Schedule& s) {
  if (!congruent(p, s.source)) {
    throw Error(ErrorKind::TypeMismatch, "schedule source does not match the term");
  }
  TypedProcess tp = proof_assign(s.source, s.variant, kSourceVarPrefix);
  ProofStructure proc = instantiate(tp.proof, s.instantiation);
  ProofStructure net = s.proof;
  strip_root_par(net);
  int x = net.conclusions()[0];
  int y = net.conclusions()[1];
  auto map = net.import(proc);
  net.set_conclusions({});
  net.add_cut(proc.conclusions()[0] + map.wire_offset, x);
  net.add_conclusion(y);
  return net;
}

Pairing induced_pairing(const Term& p, const Schedule& s) {
  Normalized n = normalize(cut_against(p, s));
  Pairing out;
  for (auto [a, b] : n.pairs) out.add(a, b);
  return out;
}

std::optional<std::vector<LocPair>> least_accepted_order(const Term& p, const Pairing& c) {
  // Executing one pair of c never disables another, so taking the least
  // enabled pair at every point is complete and lexicographically least.
  std::set<LocPair> left = c.pairs();
  std::vector<LocPair> order;
  Term cur = p;
  while (!left.empty()) {
    std::set<LocPair> enabled = enabled_pairs(cur);
    auto it = std::find_if(left.begin(), left.end(),
                           [&](const LocPair& e) { return enabled.count(e) != 0; });
    if (it == left.end()) return std::nullopt;
    cur = step(cur, it->first, it->second);
    order.push_back(*it);
    left.erase(it);
  }
  return order;
}

std::vector<Pairing> maximal_consistent_pairings(const Term& p, std::size_t cap) {
  std::vector<Pairing> consistent;
  for (const Pairing& c : enumerate_pairings(p, false, cap)) {
    if (is_consistent(p, c).consistent) consistent.push_back(c);
  }
  std::vector<Pairing> out;
  for (const Pairing& a : consistent) {
    bool maximal = std::none_of(consistent.begin(), consistent.end(), [&](const Pairing& b) {
      return b.size() > a.size() && b.contains(a);
    });
    if (maximal) out.push_back(a);
  }
  return out;
}

Schedule pairing_to_schedule(const Term& p, const Pairing& c) {
  check_valid(p, c);
  Consistency cons = is_consistent(p, c);
  if (!cons.consistent) {
    throw Error(ErrorKind::NotConsistent, "pairing " + c.to_string() + " is not consistent");
  }
  if (c.domain().size() != locations(p).size()) {
    for (const Pairing& d : enumerate_pairings(p, false)) {
      if (d.size() > c.size() && d.contains(c) && is_consistent(p, d).consistent) {
        throw Error(ErrorKind::NotMaximal, "pairing " + c.to_string() +
                                               " extends to the consistent " + d.to_string());
      }
    }
  }
  std::optional<std::vector<LocPair>> order = least_accepted_order(p, c);
  if (!order) throw Error(ErrorKind::Internal, "consistent pairing has no accepted order");
  return trace_schedule(p, *order, Variant::Async);
}

ExecutionTrace replay(const Term& p, const Schedule& s) {
  Normalized n = normalize(cut_against(p, s));
  try {
    return execute(s.source, n.pairs);
  } catch (const StepError&) {
  }
  Pairing c;
  for (auto [a, b] : n.pairs) c.add(a, b);
  std::optional<std::vector<LocPair>> order = least_accepted_order(s.source, c);
  if (!order) {
    throw Error(ErrorKind::NotExecutable,
                "pairs " + c.to_string() + " emitted by the schedule are not executable");
  }
  return execute(s.source, *order);
}

}  // namespace proofsched
