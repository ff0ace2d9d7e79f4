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

#include "generators.hpp"
#include "proofsched/error.hpp"
#include "proofsched/formula.hpp"

namespace proofsched {
namespace {

Formula F(const char* s) { return parse_formula(s); }

Formula random_formula(testing::Rng& rng, int depth) {
  int pick = testing::uniform(rng, 0, depth == 0 ? 1 : 5);
  std::string v(1, static_cast<char>('x' + testing::uniform(rng, 0, 2)));
  switch (pick) {
    case 0:
      return Formula::var(v);
    case 1:
      return Formula::dual_var(v);
    case 2:
      return Formula::tensor(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3:
      return Formula::par(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4:
      return Formula::mod_pos("a", random_formula(rng, depth - 1));
    default:
      return Formula::mod_neg("b", random_formula(rng, depth - 1));
  }
}

TEST(Formula, NegateModality) {
  EXPECT_EQ(negate(F("<a>+ x")).to_string(), "<a>- x^");
}

TEST(Formula, NegateDeMorgan) {
  EXPECT_EQ(negate(F("x @ y")).to_string(), "x^ * y^");
  EXPECT_EQ(negate(F("x * <b>- y")), F("x^ @ <b>+ y^"));
}

TEST(Formula, NegateTwiceIsIdentity) {
  Formula f = F("(x * y^) @ <b>- z");
  EXPECT_EQ(negate(negate(f)), f);
}

TEST(Formula, Lollipop) {
  EXPECT_EQ(lollipop(F("x"), F("x")).to_string(), "x^ @ x");
  EXPECT_EQ(lollipop(F("x * y"), F("z")).to_string(), "(x^ @ y^) @ z");
  EXPECT_EQ(lollipop(F("<a>+ x"), F("y^ @ y")).to_string(), "<a>- x^ @ (y^ @ y)");
}

TEST(Formula, LollipopSugarParses) {
  EXPECT_EQ(F("x * y -o z"), lollipop(F("x * y"), F("z")));
  // Right-associative.
  EXPECT_EQ(F("x -o y -o z"), lollipop(F("x"), lollipop(F("y"), F("z"))));
}

TEST(Formula, PrecedenceAndAssociativity) {
  EXPECT_EQ(F("x * y @ z"), Formula::par(F("x * y"), F("z")));
  EXPECT_EQ(F("x @ y @ z"), Formula::par(F("x @ y"), F("z")));
  EXPECT_EQ(F("x * y * z"), Formula::tensor(F("x * y"), F("z")));
  EXPECT_EQ(F("<a>+ x * y"), Formula::tensor(F("<a>+ x"), F("y")));
  EXPECT_EQ(F("(x @ y)^"), F("x^ * y^"));
}

TEST(Formula, ParseErrorsCarryPosition) {
  try {
    F("x @ (y * ");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GT(e.column(), 1);
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  EXPECT_THROW(F("<a> x"), ParseError);
  EXPECT_THROW(F(""), ParseError);
  EXPECT_THROW(F("x y"), ParseError);
}

TEST(Formula, PrintParseRoundTrip) {
  testing::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 4);
    EXPECT_EQ(F(f.to_string().c_str()), f) << f.to_string();
  }
}

TEST(Formula, NegationProperties) {
  testing::Rng rng(11);
  Substitution sigma;
  sigma.bind("x", F("y * <a>+ z"));
  sigma.bind("z", F("w @ w^"));
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 4);
    EXPECT_EQ(negate(negate(f)), f);
    EXPECT_EQ(substitute(negate(f), sigma), negate(substitute(f, sigma)));
  }
}

TEST(Substitution, DualSideIsNegated) {
  Substitution s;
  s.bind("x", F("y * z"));
  EXPECT_EQ(substitute(F("x^ @ x"), s).to_string(), "(y^ @ z^) @ (y * z)");
  EXPECT_EQ(substitute(F("x^ @ x"), Substitution{}), F("x^ @ x"));
}

TEST(Substitution, NormalizedIsIdempotent) {
  Substitution s;
  s.bind("x", F("y * y"));
  s.bind("y", F("<a>+ z"));
  Substitution n = s.normalized();
  EXPECT_EQ(*n.find("x"), F("<a>+ z * <a>+ z"));
  for (const auto& [k, v] : n.bindings()) {
    EXPECT_EQ(substitute(v, n), v) << k;
  }
}

TEST(Unify, MetaAgainstModality) {
  Substitution s = unify_dual(F("X"), F("<a>+ y"), {}, {"X"});
  EXPECT_EQ(s.apply(F("X")).to_string(), "<a>- y^");
}

TEST(Unify, StructuralDecomposition) {
  Substitution s = unify_dual(F("x * X"), F("x^ @ <b>- z"), {}, {"X"});
  EXPECT_EQ(s.apply(F("X")), F("<b>+ z^"));
}

TEST(Unify, OccursCheck) {
  try {
    unify_dual(F("X"), F("X"), {}, {"X"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OccursCheck);
  }
  EXPECT_THROW(unify_dual(F("X"), F("X^ * y"), {}, {"X"}), Error);
}

TEST(Unify, RigidVariablesClash) {
  try {
    unify_dual(F("x"), F("y"), {}, {"X"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Clash);
  }
  EXPECT_THROW(unify_dual(F("<a>+ x"), F("<b>- x^"), {}, {}), Error);
  EXPECT_THROW(unify_dual(F("x * y"), F("x^ * y^"), {}, {}), Error);
  EXPECT_NO_THROW(unify_dual(F("x * y"), F("x^ @ y^"), {}, {}));
}

TEST(Unify, ResultMakesFormulasDual) {
  // Independent check: after unification the instances are literal negations.
  testing::Rng rng(3);
  VarSet open{"x"};
  int unified = 0;
  for (int i = 0; i < 400; ++i) {
    Formula a = random_formula(rng, 3);
    Formula b = random_formula(rng, 3);
    try {
      Substitution s = unify_dual(a, b, {}, open);
      EXPECT_EQ(s.apply(a), negate(s.apply(b))) << a.to_string() << " / " << b.to_string();
      ++unified;
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::Clash || e.kind() == ErrorKind::OccursCheck);
    }
  }
  EXPECT_GT(unified, 0);
}

TEST(Unify, ExtendsGivenSubstitution) {
  Substitution s0;
  s0.bind("X", F("y"));
  Substitution s = unify_dual(F("X * Z"), F("y^ @ w"), s0, {"X", "Z"});
  EXPECT_EQ(s.apply(F("Z")), F("w^"));
  EXPECT_THROW(unify_dual(F("X"), F("y"), s0, {"X"}), Error);
}

}  // namespace
}  // namespace proofsched
