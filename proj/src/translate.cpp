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

#include "proofsched/translate.hpp"

#include <functional>

namespace proofsched {

std::string_view to_string(Variant v) { return v == Variant::Sync ? "sync" : "async"; }

Variant parse_variant(std::string_view text) {
  if (text == "sync") return Variant::Sync;
  if (text == "async") return Variant::Async;
  throw Error(ErrorKind::Parse, "unknown variant '" + std::string(text) + "'");
}

namespace {

struct TypeBuilder {
  Variant variant;
  const std::string& prefix;
  int counter = 0;

  Formula fresh() { return Formula::var(prefix + std::to_string(counter++)); }

  Formula build(const Term& p) {
    switch (p.kind()) {
      case TermKind::Unit: {
        Formula a = fresh();
        return Formula::par(negate(a), a);
      }
      case TermKind::Par: {
        Formula l = build(p.left());
        Formula r = build(p.right());
        return Formula::tensor(l, r);
      }
      case TermKind::Prefix: {
        Formula body = build(p.body());
        Formula a = fresh();
        Formula na = negate(a);
        const std::string& c = p.name();
        if (variant == Variant::Sync) {
          if (p.polarity() > 0) {
            return Formula::mod_pos(c, Formula::par(na, Formula::tensor(body, a)));
          }
          return Formula::par(Formula::mod_neg(c, Formula::tensor(body, na)), a);
        }
        if (p.polarity() > 0) {
          return Formula::par(Formula::mod_pos(c, na), Formula::tensor(body, a));
        }
        return Formula::par(Formula::tensor(body, na), Formula::mod_neg(c, a));
      }
    }
    throw Error(ErrorKind::Internal, "bad term");
  }
};

struct ProofBuilder {
  Variant variant;
  const std::string& prefix;
  ProofStructure net;
  std::vector<std::string> vars;

  // Returns the (alpha^, alpha) conclusion wires of a fresh axiom.
  std::pair<int, int> fresh_axiom() {
    std::string name = prefix + std::to_string(vars.size());
    vars.push_back(name);
    Formula a = Formula::var(name);
    return net.add_axiom(negate(a), a);
  }

  int build(const Term& p) {
    switch (p.kind()) {
      case TermKind::Unit: {
        auto [x, y] = fresh_axiom();
        return net.add_par(x, y);
      }
      case TermKind::Par: {
        int l = build(p.left());
        int r = build(p.right());
        return net.add_tensor(l, r);
      }
      case TermKind::Prefix: {
        int body = build(p.body());
        auto [x, y] = fresh_axiom();
        const std::string& c = p.name();
        Location loc = p.location();
        if (variant == Variant::Sync) {
          if (p.polarity() > 0) {
            int t = net.add_tensor(body, y);
            int q = net.add_par(x, t);
            return net.add_modality(LinkKind::ModPos, c, loc, q);
          }
          int t = net.add_tensor(body, x);
          int m = net.add_modality(LinkKind::ModNeg, c, loc, t);
          return net.add_par(m, y);
        }
        if (p.polarity() > 0) {
          int m = net.add_modality(LinkKind::ModPos, c, loc, x);
          int t = net.add_tensor(body, y);
          return net.add_par(m, t);
        }
        int t = net.add_tensor(body, x);
        int m = net.add_modality(LinkKind::ModNeg, c, loc, y);
        return net.add_par(t, m);
      }
    }
    throw Error(ErrorKind::Internal, "bad term");
  }
};

}  // namespace

Formula ttype(const Term& p, Variant variant, const std::string& var_prefix) {
  TypeBuilder b{variant, var_prefix};
  return b.build(p);
}

Formula ttype_sync(const Term& p) { return ttype(p, Variant::Sync); }
Formula ttype_async(const Term& p) { return ttype(p, Variant::Async); }

TypedProcess proof_assign(const Term& p, Variant variant, const std::string& var_prefix) {
  ProofBuilder b{variant, var_prefix, {}, {}};
  int root = b.build(p);
  b.net.add_conclusion(root);
  TypedProcess out;
  out.term = p;
  out.variant = variant;
  out.type = b.net.formula(root);
  out.proof = std::move(b.net);
  out.fresh_vars = std::move(b.vars);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of cut-free proofs

namespace {

struct Skeleton {
  ProofStructure net;
  // Atom wires awaiting an axiom link; the wire has no producer yet.
  std::vector<int> atoms;
};

// Builds the connective links of `a` top-down. Atom wires are created as
// placeholders without a producer.
int build_skeleton(const Formula& a, bool allow_modalities, Location& next_location,
                   Skeleton& s) {
  if (a.is_variable() || (a.is_modality() && !allow_modalities)) {
    int w = s.net.insert_wire(a);
    s.atoms.push_back(w);
    return w;
  }
  if (a.is_binary()) {
    int l = build_skeleton(a.left(), allow_modalities, next_location, s);
    int r = build_skeleton(a.right(), allow_modalities, next_location, s);
    return a.kind() == FormulaKind::Tensor ? s.net.add_tensor(l, r) : s.net.add_par(l, r);
  }
  Location loc = next_location++;
  int body = build_skeleton(a.body(), allow_modalities, next_location, s);
  return s.net.add_modality(a.kind() == FormulaKind::ModPos ? LinkKind::ModPos : LinkKind::ModNeg,
                            a.name(), loc, body);
}

}  // namespace

std::vector<ProofStructure> enumerate_cutfree_proofs(const Formula& a, bool allow_modalities,
                                                     std::size_t cap) {
  Skeleton s;
  Location next_location = 0;
  int root = build_skeleton(a, allow_modalities, next_location, s);
  s.net.add_conclusion(root);
  if (s.atoms.size() > cap) {
    throw Error(ErrorKind::CapExceeded, std::to_string(s.atoms.size()) +
                                            " axiom atoms exceed the cap of " +
                                            std::to_string(cap));
  }
  std::vector<ProofStructure> out;
  std::vector<bool> used(s.atoms.size(), false);
  std::vector<std::pair<int, int>> matching;
  std::function<void()> go = [&]() {
    std::size_t i = 0;
    while (i < s.atoms.size() && used[i]) ++i;
    if (i == s.atoms.size()) {
      ProofStructure net = s.net;
      for (auto [x, y] : matching) {
        // Reattach the placeholder wires to a real axiom link.
        Link ax;
        ax.kind = LinkKind::Axiom;
        ax.conclusions = {x, y};
        net.insert_link(std::move(ax));
      }
      if (dr_check(net).ok) out.push_back(std::move(net));
      return;
    }
    used[i] = true;
    Formula fi = s.net.formula(s.atoms[i]);
    Formula want = negate(fi);
    for (std::size_t j = i + 1; j < s.atoms.size(); ++j) {
      if (used[j] || !(s.net.formula(s.atoms[j]) == want)) continue;
      used[j] = true;
      matching.push_back({s.atoms[i], s.atoms[j]});
      go();
      matching.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  go();
  return out;
}

// ---------------------------------------------------------------------------
// Compatibility and extraction

bool compatible(const Term& p, const ProofStructure& net) {
  ProofOrder po = proof_order(net);
  ActionOrder ao(p);
  std::set<Location> locs = net.locations();
  for (Location l : locs) {
    const Term* t = find_prefix(p, l);
    if (t == nullptr) return false;
    if (t->name() != po.subject.at(l) || t->polarity() != po.polarity.at(l)) return false;
  }
  for (auto [l, m] : ao.strict_pairs()) {
    if (locs.count(l) && locs.count(m) && !po.less(l, m)) return false;
  }
  return true;
}

namespace {

void filter_into(const Term& p, const std::set<Location>& keep, std::vector<Term>& out) {
  switch (p.kind()) {
    case TermKind::Unit: return;
    case TermKind::Par:
      filter_into(p.left(), keep, out);
      filter_into(p.right(), keep, out);
      return;
    case TermKind::Prefix: {
      std::vector<Term> inner;
      filter_into(p.body(), keep, inner);
      if (keep.count(p.location())) {
        out.push_back(Term::prefix(p.name(), p.polarity(), p.location(), par_all(inner)));
      } else {
        out.insert(out.end(), inner.begin(), inner.end());
      }
      return;
    }
  }
}

}  // namespace

Term restrict_term(const Term& p, const std::set<Location>& keep) {
  std::vector<Term> parts;
  filter_into(p, keep, parts);
  return par_all(parts);
}

Term extract_term(const Term& p, const ProofStructure& net) {
  if (!compatible(p, net)) {
    throw Error(ErrorKind::Incompatible, "proof structure is not compatible with the term");
  }
  return restrict_term(p, net.locations());
}

}  // namespace proofsched
