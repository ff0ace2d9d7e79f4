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

#include <gtest/gtest.h>

#include <map>

#include "generators.hpp"
#include "proofsched/error.hpp"
#include "proofsched/schedule.hpp"
#include "proofsched/translate.hpp"

namespace proofsched {
namespace {

const char* kExample = "a^1.c^2 | b^3.~a^4 | ~b^5.~c^6 | a^7.~b^8 | b^9 | ~a^0";

Term T(const char* s) { return parse_term(s); }

void count_occurrences(const Formula& f, std::map<std::string, std::pair<int, int>>& out) {
  switch (f.kind()) {
    case FormulaKind::Var:
      ++out[f.name()].first;
      break;
    case FormulaKind::DualVar:
      ++out[f.name()].second;
      break;
    case FormulaKind::ModPos:
    case FormulaKind::ModNeg:
      count_occurrences(f.body(), out);
      break;
    default:
      count_occurrences(f.left(), out);
      count_occurrences(f.right(), out);
  }
}

TEST(Types, Sync) {
  EXPECT_EQ(ttype_sync(T("1")).to_string(), "v0^ @ v0");
  EXPECT_EQ(ttype_sync(T("a^1")).to_string(), "<a>+ (v1^ @ ((v0^ @ v0) * v1))");
  EXPECT_EQ(ttype_sync(T("~a^1")).to_string(), "(<a>- ((v0^ @ v0) * v1^)) @ v1");
}

TEST(Types, Async) {
  EXPECT_EQ(ttype_async(T("1")).to_string(), "v0^ @ v0");
  EXPECT_EQ(ttype_async(T("a^1")).to_string(), "<a>+ v1^ @ ((v0^ @ v0) * v1)");
  EXPECT_EQ(ttype_async(T("~a^1")).to_string(), "((v0^ @ v0) * v1^) @ <a>- v1");
}

TEST(Types, ParFollowsTermBracketing) {
  EXPECT_EQ(ttype(T("1 | 1"), Variant::Sync).to_string(), "(v0^ @ v0) * (v1^ @ v1)");
  EXPECT_EQ(ttype(T("1"), Variant::Sync, "w").to_string(), "w0^ @ w0");
}

TEST(Types, EachVariableTwiceOncePerPolarity) {
  testing::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    Term p = testing::random_term(rng, 6);
    for (Variant v : {Variant::Sync, Variant::Async}) {
      TypedProcess tp = proof_assign(p, v);
      std::map<std::string, std::pair<int, int>> occ;
      count_occurrences(tp.type, occ);
      EXPECT_EQ(occ.size(), tp.fresh_vars.size());
      for (const std::string& x : tp.fresh_vars) {
        EXPECT_EQ(occ[x], std::make_pair(1, 1)) << x << " in " << tp.type.to_string();
      }
    }
  }
}

TEST(ProofAssign, Unit) {
  TypedProcess tp = proof_assign(T("1"), Variant::Sync);
  EXPECT_EQ(tp.proof.links().size(), 2u);
  EXPECT_EQ(tp.proof.count(LinkKind::Axiom), 1u);
  EXPECT_EQ(tp.proof.count(LinkKind::Par), 1u);
  EXPECT_TRUE(dr_check(tp.proof).ok);
}

TEST(ProofAssign, NestedSyncOrder) {
  TypedProcess tp = proof_assign(T("a^1.b^2"), Variant::Sync);
  EXPECT_EQ(proof_order(tp.proof).strict, (std::set<LocPair>{{1, 2}}));
}

TEST(ProofAssign, ExampleAsync) {
  Term p = T(kExample);
  TypedProcess tp = proof_assign(p, Variant::Async);
  EXPECT_EQ(tp.proof.count(LinkKind::ModPos) + tp.proof.count(LinkKind::ModNeg), 10u);
  std::set<Location> want{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_EQ(tp.proof.locations(), want);
  ProofOrder o = proof_order(tp.proof);
  for (Location l : want) {
    EXPECT_EQ(o.subject.at(l), subject(p, l));
    EXPECT_EQ(o.polarity.at(l), polarity(p, l));
  }
}

TEST(ProofAssign, InvariantsOnRandomTerms) {
  testing::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    Term p = testing::random_term(rng, 6);
    ActionOrder order(p);
    for (Variant v : {Variant::Sync, Variant::Async}) {
      TypedProcess tp = proof_assign(p, v);
      ASSERT_NO_THROW(validate(tp.proof));
      EXPECT_TRUE(tp.proof.cut_ids().empty());
      EXPECT_TRUE(dr_check(tp.proof).ok);
      EXPECT_EQ(tp.proof.conclusion_formulas(), std::vector<Formula>{tp.type});
      EXPECT_EQ(tp.type, ttype(p, v));
      ProofOrder po = proof_order(tp.proof);
      std::vector<Location> locs = locations(p);
      EXPECT_EQ(tp.proof.locations(), std::set<Location>(locs.begin(), locs.end()));
      for (Location l : locs) {
        EXPECT_EQ(po.subject.at(l), subject(p, l));
        EXPECT_EQ(po.polarity.at(l), polarity(p, l));
      }
      // Asynchronous modalities are not nested, so only the synchronous proof
      // carries the action order.
      if (v == Variant::Sync) {
        EXPECT_EQ(po.strict, order.strict_pairs()) << p.to_string();
        EXPECT_TRUE(compatible(p, tp.proof));
        EXPECT_TRUE(congruent(extract_term(p, tp.proof), p));
      } else {
        EXPECT_TRUE(po.strict.empty());
      }
    }
  }
}

TEST(Enumerate, PairSync) {
  Term p = T("a^1 | ~a^2");
  std::vector<ProofStructure> all = enumerate_cutfree_proofs(ttype_sync(p), true);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(positional_signature(all[0], false),
            positional_signature(proof_assign(p, Variant::Sync).proof, false));
}

TEST(Enumerate, Unit) {
  EXPECT_EQ(enumerate_cutfree_proofs(parse_formula("v0^ @ v0"), true).size(), 1u);
}

TEST(Enumerate, TensorOfAxiomIsCyclic) {
  EXPECT_TRUE(enumerate_cutfree_proofs(parse_formula("v0 * v0^"), true).empty());
}

TEST(Enumerate, ModalityAtoms) {
  // One compound axiom, or two modality links over an axiom on x.
  for (bool links : {false, true}) {
    std::vector<ProofStructure> all =
        enumerate_cutfree_proofs(parse_formula("<a>+ x @ <a>- x^"), links);
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(all[0].has_modalities(), links);
  }
}

TEST(Enumerate, Cap) {
  try {
    enumerate_cutfree_proofs(ttype_sync(T(kExample)), true, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Compatible, OrderMustBeIncluded) {
  EXPECT_FALSE(compatible(T("a^1.b^2"), proof_assign(T("b^2.a^1"), Variant::Sync).proof));
  EXPECT_TRUE(compatible(T("a^1 | b^2"), proof_assign(T("a^1.b^2"), Variant::Sync).proof));
  EXPECT_FALSE(compatible(T("a^1"), proof_assign(T("~a^1"), Variant::Sync).proof));
  EXPECT_FALSE(compatible(T("a^1"), proof_assign(T("a^2"), Variant::Sync).proof));
  try {
    extract_term(T("a^1"), proof_assign(T("a^2"), Variant::Sync).proof);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Incompatible);
  }
}

TEST(Extract, AfterOneModalityStep) {
  Term p = T(kExample);
  Schedule s = trace_schedule(p, {{1, 0}}, Variant::Sync);
  Normalized n = normalize(cut_against(p, s));
  EXPECT_EQ(n.pairs, (std::vector<LocPair>{{0, 1}}));
  EXPECT_TRUE(congruent(extract_term(p, n.net), T("c^2 | b^3.~a^4 | ~b^5.~c^6 | a^7.~b^8 | b^9")));
}

TEST(Extract, ModalityFreeIsUnit) {
  EXPECT_TRUE(congruent(extract_term(T(kExample), proof_assign(T("1 | 1"), Variant::Sync).proof),
                        T("1")));
}

TEST(Extract, RestrictTerm) {
  Term p = T("a^1.(b^2 | c^3.d^4)");
  EXPECT_TRUE(congruent(restrict_term(p, {2, 3}), T("b^2 | c^3")));
  EXPECT_TRUE(congruent(restrict_term(p, {1, 4}), T("a^1.d^4")));
}

TEST(Variants, Names) {
  EXPECT_EQ(parse_variant("sync"), Variant::Sync);
  EXPECT_EQ(parse_variant("async"), Variant::Async);
  EXPECT_EQ(to_string(Variant::Async), "async");
  EXPECT_THROW(parse_variant("both"), Error);
}

}  // namespace
}  // namespace proofsched
