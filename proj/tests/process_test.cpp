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

#include <algorithm>

#include "generators.hpp"
#include "proofsched/error.hpp"
#include "proofsched/process.hpp"

namespace proofsched {
namespace {

const char* kExample = "a^1.c^2 | b^3.~a^4 | ~b^5.~c^6 | a^7.~b^8 | b^9 | ~a^0";

Term T(const char* s) { return parse_term(s); }

Pairing P(std::initializer_list<LocPair> pairs) {
  Pairing c;
  for (auto [a, b] : pairs) c.add(a, b);
  return c;
}

// Test-side oracle: unguarded prefixes, found by a direct walk.
void top_prefixes(const Term& p, std::vector<const Term*>& out) {
  if (p.is_par()) {
    top_prefixes(p.left(), out);
    top_prefixes(p.right(), out);
  } else if (p.is_prefix()) {
    out.push_back(&p);
  }
}

std::set<LocPair> enabled_oracle(const Term& p) {
  std::vector<const Term*> tops;
  top_prefixes(p, tops);
  std::set<LocPair> out;
  for (const Term* x : tops) {
    for (const Term* y : tops) {
      if (x->name() == y->name() && x->polarity() == 1 && y->polarity() == -1) {
        out.insert(make_pair_normalized(x->location(), y->location()));
      }
    }
  }
  return out;
}

TEST(TermSyntax, PrintParse) {
  EXPECT_EQ(T("a^1.b^2").to_string(), "a^1.b^2");
  EXPECT_EQ(T(" ~a^3 ").to_string(), "~a^3");
  EXPECT_EQ(T("a^1.(b^2 | c^3)").to_string(), "a^1.(b^2 | c^3)");
  EXPECT_EQ(T("a^1 | (b^2 | c^3)").to_string(), "a^1 | (b^2 | c^3)");
  EXPECT_EQ(T("(a^1 | b^2) | c^3").to_string(), "a^1 | b^2 | c^3");
  EXPECT_EQ(T("1").to_string(), "1");
  EXPECT_EQ(T(kExample).to_string(), kExample);
  EXPECT_EQ(T("a^1.1"), T("a^1"));
}

TEST(TermSyntax, BarIsLeftAssociative) {
  Term t = T("a^1 | b^2 | c^3");
  ASSERT_TRUE(t.is_par());
  EXPECT_TRUE(t.left().is_par());
  EXPECT_TRUE(t.right().is_prefix());
}

TEST(TermSyntax, PrefixBindsTighterThanBar) {
  Term t = T("a^1.b^2 | c^3");
  ASSERT_TRUE(t.is_par());
  EXPECT_EQ(t.left().to_string(), "a^1.b^2");
}

TEST(TermSyntax, LocationAutoAssignment) {
  EXPECT_EQ(T("a.b | ~a").to_string(), "a^1.b^2 | ~a^3");
  EXPECT_EQ(T("a | ~a^7").to_string(), "a^1 | ~a^7");
}

TEST(TermSyntax, DuplicateLocations) {
  try {
    T("a^1 | b^1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateLocation);
    EXPECT_EQ(std::string(e.what()).rfind("1:", 0), 0u) << e.what();
  }
  // The implicit tag of the second prefix is 2.
  EXPECT_THROW(T("a | b | c^2"), Error);
}

TEST(TermSyntax, ParseErrors) {
  for (const char* bad : {"", "a^", "a.", "(a", "a | ", "A", "a^x", "a ~b"}) {
    EXPECT_THROW(T(bad), ParseError) << bad;
  }
  try {
    T("a^1 |\n  | b");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Congruence, UnitIsNeutral) {
  EXPECT_EQ(canonicalize(T("1 | a^1")), canonicalize(T("a^1")));
  EXPECT_TRUE(congruent(T("a^1.(1 | 1)"), T("a^1")));
}

TEST(Congruence, CommutativeAssociative) {
  EXPECT_TRUE(congruent(T("(a^1 | b^2) | c^3"), T("c^3 | (b^2 | a^1)")));
}

TEST(Congruence, PrefixesDoNotPermute) {
  EXPECT_FALSE(congruent(T("a^1.b^2"), T("b^2.a^1")));
  EXPECT_FALSE(congruent(T("a^1 | b^2"), T("a^1.b^2")));
  EXPECT_FALSE(congruent(T("a^1"), T("a^2")));
  EXPECT_FALSE(congruent(T("a^1"), T("~a^1")));
}

TEST(Congruence, DroppingLocations) {
  EXPECT_EQ(canonicalize(T("a^1 | b^2"), false), canonicalize(T("b^5 | a^9"), false));
}

TEST(Congruence, CanonicalToTermRoundTrip) {
  Term t = T(kExample);
  EXPECT_TRUE(congruent(canonicalize(t).to_term(), t));
}

TEST(Subjects, ExampleLocations) {
  Term p = T(kExample);
  EXPECT_EQ(subject(p, 4), "a");
  EXPECT_EQ(polarity(p, 4), -1);
  EXPECT_EQ(subject(p, 9), "b");
  EXPECT_EQ(polarity(p, 9), 1);
  try {
    subject(p, 42);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownLocation);
  }
}

TEST(ActionOrder, Example) {
  ActionOrder o(T(kExample));
  std::set<LocPair> expected{{1, 2}, {3, 4}, {5, 6}, {7, 8}};
  EXPECT_EQ(o.strict_pairs(), expected);
  EXPECT_EQ(o.covering(), expected);
}

TEST(ActionOrder, FlatAndNested) {
  EXPECT_TRUE(ActionOrder(T("a^1 | b^2")).strict_pairs().empty());
  ActionOrder o(T("a^1.b^2.c^3"));
  std::set<LocPair> expected{{1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(o.strict_pairs(), expected);
  EXPECT_TRUE(o.less(1, 3));
  EXPECT_FALSE(o.less(3, 1));
  EXPECT_EQ(o.minimal(), std::vector<Location>{1});
}

TEST(Step, DirectRule) {
  EXPECT_EQ(step(T("a^1.b^2 | ~a^3"), 1, 3).to_string(), "b^2");
  EXPECT_TRUE(congruent(step(T("a^1.b^2 | ~a^3"), 3, 1), T("b^2")));
}

TEST(Step, ExamplePair) {
  EXPECT_TRUE(congruent(step(T(kExample), 1, 0),
                        T("c^2 | b^3.~a^4 | ~b^5.~c^6 | a^7.~b^8 | b^9")));
}

TEST(Step, NotEnabled) {
  Term p = T("a^1.b^2 | ~a^3");
  for (LocPair bad : std::vector<LocPair>{{2, 3}, {1, 1}}) {
    try {
      step(p, bad.first, bad.second);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotEnabled);
    }
  }
  try {
    step(p, 1, 42);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownLocation);
  }
  EXPECT_THROW(step(T("a^1 | a^2"), 1, 2), Error);
  EXPECT_THROW(step(T("a^1 | ~b^2"), 1, 2), Error);
}

TEST(Step, EnabledPairs) {
  EXPECT_TRUE(enabled_pairs(T("1")).empty());
  std::set<LocPair> two{{1, 2}, {1, 3}};
  EXPECT_EQ(enabled_pairs(T("a^1 | ~a^2 | ~a^3")), two);
  std::set<LocPair> ex{{0, 1}, {0, 7}, {3, 5}, {5, 9}};
  EXPECT_EQ(enabled_pairs(T(kExample)), ex);
  EXPECT_EQ(enabled_pairs(T(kExample)), enabled_oracle(T(kExample)));
}

TEST(Step, EnabledPairsMatchOracle) {
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Term p = testing::random_term(rng, 6);
    EXPECT_EQ(enabled_pairs(p), enabled_oracle(p)) << p.to_string();
  }
}

TEST(Execute, EmptyTrace) {
  ExecutionTrace t = execute(T(kExample), {});
  EXPECT_TRUE(congruent(t.final, T(kExample)));
}

TEST(Execute, ExampleTrace) {
  ExecutionTrace t = execute(T(kExample), {{9, 5}, {1, 0}, {2, 6}});
  EXPECT_TRUE(congruent(t.final, T("b^3.~a^4 | a^7.~b^8")));
  EXPECT_EQ(t.steps.size(), 3u);
}

TEST(Execute, ReportsFailingIndex) {
  try {
    execute(T(kExample), {{2, 6}, {1, 0}});
    FAIL();
  } catch (const StepError& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  try {
    execute(T(kExample), {{1, 0}, {7, 0}});
    FAIL();
  } catch (const StepError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Reachable, Small) {
  std::vector<Reachable> one = reachable(T("1"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].pairing.empty());
  EXPECT_TRUE(one[0].term.components.empty());

  std::vector<Reachable> r = reachable(T("a^1 | ~a^2"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].pairing, Pairing{});
  EXPECT_EQ(r[1].pairing, P({{1, 2}}));
  EXPECT_TRUE(r[1].term.components.empty());
}

TEST(Reachable, ExampleContainsSubpairing) {
  std::vector<Reachable> r = reachable(T(kExample));
  Reachable want{P({{9, 5}, {1, 0}, {2, 6}}), canonicalize(T("b^3.~a^4 | a^7.~b^8"))};
  EXPECT_NE(std::find(r.begin(), r.end(), want), r.end());
}

TEST(Pairings, ExampleTotal) {
  std::vector<Pairing> got = enumerate_pairings(T(kExample), true);
  std::vector<Pairing> want{
      P({{9, 5}, {1, 0}, {2, 6}, {3, 8}, {4, 7}}),
      P({{3, 5}, {1, 4}, {2, 6}, {7, 0}, {9, 8}}),
      P({{1, 4}, {3, 8}, {7, 0}, {9, 5}, {2, 6}}),
      P({{1, 0}, {3, 5}, {7, 4}, {9, 8}, {2, 6}}),
  };
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Pairings, Trivial) {
  EXPECT_EQ(enumerate_pairings(T("a^1 | b^2"), false), std::vector<Pairing>{Pairing{}});
  EXPECT_TRUE(enumerate_pairings(T("a^1 | ~a^2 | ~a^3"), true).empty());
  EXPECT_EQ(enumerate_pairings(T("a^1 | ~a^2 | ~a^3"), false).size(), 3u);
}

TEST(Pairings, Validity) {
  Term p = T(kExample);
  EXPECT_NO_THROW(check_valid(p, P({{1, 0}})));
  EXPECT_THROW(check_valid(p, P({{1, 7}})), Error);
  EXPECT_THROW(check_valid(p, P({{1, 2}})), Error);
  EXPECT_THROW(check_valid(p, P({{1, 42}})), Error);
  Pairing c;
  c.add(1, 0);
  EXPECT_THROW(c.add(0, 4), Error);
  EXPECT_EQ(c.partner(0), 1);
  EXPECT_EQ(c.partner(1), 0);
  EXPECT_FALSE(c.partner(2).has_value());
}

TEST(Consistency, Example) {
  Term p = T(kExample);
  Consistency k = is_consistent(p, P({{9, 5}, {1, 0}, {2, 6}, {3, 8}, {4, 7}}));
  EXPECT_FALSE(k.consistent);
  ASSERT_FALSE(k.cycle.empty());
  for (Location l : k.cycle) {
    EXPECT_TRUE(l == 3 || l == 8 || l == 4 || l == 7) << l;
  }
  EXPECT_TRUE(is_consistent(p, P({{3, 5}, {1, 4}, {2, 6}, {7, 0}, {9, 8}})).consistent);
  EXPECT_TRUE(is_consistent(p, Pairing{}).consistent);
}

TEST(Consistency, NotDownwardClosed) {
  Consistency k = is_consistent(T("a^1.b^2 | ~b^3"), P({{2, 3}}));
  EXPECT_FALSE(k.consistent);
  EXPECT_EQ(k.not_closed, 2);
}

TEST(Consistency, MaximalSubpairings) {
  Term p = T(kExample);
  Pairing c1 = P({{9, 5}, {1, 0}, {2, 6}, {3, 8}, {4, 7}});
  Pairing c2 = P({{3, 5}, {1, 4}, {2, 6}, {7, 0}, {9, 8}});
  EXPECT_EQ(maximal_consistent_subpairings(p, c1),
            std::vector<Pairing>{P({{9, 5}, {1, 0}, {2, 6}})});
  EXPECT_EQ(maximal_consistent_subpairings(p, c2), std::vector<Pairing>{c2});
  EXPECT_EQ(maximal_consistent_subpairings(p, Pairing{}), std::vector<Pairing>{Pairing{}});
}

TEST(Permutation, Example) {
  Term p = T(kExample);
  EXPECT_TRUE(permutation_equivalent(execute(p, {{9, 5}, {1, 0}}), execute(p, {{1, 0}, {9, 5}})));
  ExecutionTrace t = execute(p, {{1, 0}});
  EXPECT_TRUE(permutation_equivalent(t, t));
  EXPECT_FALSE(permutation_equivalent(execute(p, {{1, 0}}), execute(p, {{7, 0}})));
  try {
    permutation_equivalent(t, execute(T("a^1 | ~a^2"), {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MismatchedInitial);
  }
}

TEST(Step, LocationsConserved) {
  testing::Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    Term p = testing::random_term(rng, 7);
    ActionOrder before(p);
    for (auto [l, m] : enabled_pairs(p)) {
      Term q = step(p, l, m);
      std::vector<Location> want;
      for (Location x : locations(p)) {
        if (x != l && x != m) want.push_back(x);
      }
      std::vector<Location> got = locations(q);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want);
      ActionOrder after(q);
      for (Location x : got) {
        EXPECT_EQ(subject(q, x), subject(p, x));
        EXPECT_EQ(polarity(q, x), polarity(p, x));
        for (Location y : got) EXPECT_EQ(after.less(x, y), before.less(x, y));
      }
    }
  }
}

}  // namespace
}  // namespace proofsched
