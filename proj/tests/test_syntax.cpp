#include "doctest.h"

#include <random>

#include "pio/parser.hpp"
#include "pio/syntax.hpp"

using namespace pio;

namespace {

Type natType() { return Type::mu("x", Type::sum(Type::one(), Type::var("x"))); }

// Random Inv-free combinator, used for structural properties.
Combinator randomCombinator(std::mt19937_64& rng, int depth) {
  if (depth == 0) {
    int p = std::uniform_int_distribution<int>(0, 16)(rng);
    if (p == 15) return Combinator::fold(natType());
    if (p == 16) return Combinator::unfold(natType());
    return Combinator::basic(static_cast<Prim>(p));
  }
  int k = std::uniform_int_distribution<int>(0, 3)(rng);
  switch (k) {
    case 0:
      return Combinator::comp(randomCombinator(rng, depth - 1),
                              randomCombinator(rng, depth - 1));
    case 1:
      return Combinator::sum(randomCombinator(rng, depth - 1),
                             randomCombinator(rng, depth - 1));
    case 2:
      return Combinator::prod(randomCombinator(rng, depth - 1),
                              randomCombinator(rng, depth - 1));
    default:
      return Combinator::trace(randomCombinator(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("substitute replaces free occurrences") {
  CHECK(substitute(Type::var("x"), "x", Type::one()) == Type::one());

  Type muT = Type::mu("x", Type::sum(Type::one(), Type::var("x")));
  CHECK(substitute(muT, "x", Type::zero()) == muT);  // bound occurrences untouched

  Type s = Type::sum(Type::var("x"), Type::var("y"));
  Type expected = Type::sum(Type::prod(Type::one(), Type::one()), Type::var("y"));
  CHECK(substitute(s, "x", Type::prod(Type::one(), Type::one())) == expected);
}

TEST_CASE("substitute avoids capture by renaming binders") {
  // (mu y. x + y)[y/x] must not capture the free y
  Type t = Type::mu("y", Type::sum(Type::var("x"), Type::var("y")));
  Type r = substitute(t, "x", Type::var("y"));
  CHECK(r.kind() == Type::Kind::Mu);
  CHECK(r.name() != "y");
  CHECK(r.body().left() == Type::var("y"));
  CHECK(r.body().right() == Type::var(r.name()));
}

TEST_CASE("freeVars") {
  CHECK(freeVars(Type::one()).empty());
  CHECK(freeVars(Type::mu("x", Type::sum(Type::one(), Type::var("x")))).empty());
  auto fv = freeVars(Type::prod(Type::var("x"), Type::mu("x", Type::var("x"))));
  CHECK(fv == std::set<std::string>{"x"});
}

TEST_CASE("x not free after substituting a type not mentioning x") {
  std::mt19937_64 rng(7);
  std::vector<Type> pool = {
      Type::one(), Type::zero(), Type::var("x"), Type::var("y"),
      Type::sum(Type::var("x"), Type::var("y")),
      Type::prod(Type::sum(Type::var("x"), Type::one()), Type::var("x")),
      Type::mu("x", Type::sum(Type::one(), Type::var("x"))),
      Type::mu("z", Type::sum(Type::var("x"), Type::var("z"))),
  };
  std::vector<Type> replacements = {Type::one(),
                                    Type::sum(Type::one(), Type::one()),
                                    Type::var("y"),
                                    Type::mu("w", Type::sum(Type::one(), Type::var("w")))};
  for (const auto& a : pool)
    for (const auto& b : replacements) {
      REQUIRE(!freeVars(b).count("x"));
      CHECK(!freeVars(substitute(a, "x", b)).count("x"));
    }
}

TEST_CASE("alpha equivalence of mu types") {
  Type a = Type::mu("x", Type::sum(Type::one(), Type::var("x")));
  Type b = Type::mu("y", Type::sum(Type::one(), Type::var("y")));
  CHECK(a == b);
  Type c = Type::mu("x", Type::mu("y", Type::sum(Type::var("x"), Type::var("y"))));
  Type d = Type::mu("y", Type::mu("x", Type::sum(Type::var("y"), Type::var("x"))));
  CHECK(c == d);
  Type e = Type::mu("y", Type::mu("x", Type::sum(Type::var("x"), Type::var("y"))));
  CHECK(c != e);
}

TEST_CASE("structural dagger pairs basic combinators") {
  auto dag = [](Prim p) { return structuralDagger(Combinator::basic(p)); };
  CHECK(dag(Prim::AssocLPlus) == Combinator::basic(Prim::AssocRPlus));
  CHECK(dag(Prim::AssocRPlus) == Combinator::basic(Prim::AssocLPlus));
  CHECK(dag(Prim::UnitLPlus) == Combinator::basic(Prim::UnitRPlus));
  CHECK(dag(Prim::SwapPlus) == Combinator::basic(Prim::SwapPlus));
  CHECK(dag(Prim::SwapTimes) == Combinator::basic(Prim::SwapTimes));
  CHECK(dag(Prim::Id) == Combinator::basic(Prim::Id));
  CHECK(dag(Prim::Distrib) == Combinator::basic(Prim::Factor));
  CHECK(dag(Prim::Absorb) == Combinator::basic(Prim::Unabsorb));
  CHECK(dag(Prim::UnitLTimes) == Combinator::basic(Prim::UnitRTimes));
}

TEST_CASE("structural dagger of composition reverses contravariantly") {
  Combinator c = Combinator::comp(Combinator::basic(Prim::SwapPlus),
                                  Combinator::basic(Prim::Distrib));
  Combinator expected = Combinator::comp(Combinator::basic(Prim::Factor),
                                         Combinator::basic(Prim::SwapPlus));
  CHECK(structuralDagger(c) == expected);
}

TEST_CASE("structural dagger commutes with trace") {
  Combinator c = Combinator::trace(Combinator::basic(Prim::SwapPlus));
  CHECK(structuralDagger(c) == c);
}

TEST_CASE("structural dagger eliminates inv and is an involution") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    Combinator c = randomCombinator(rng, 3);
    Combinator d = structuralDagger(c);
    CHECK(!containsInv(d));
    CHECK(structuralDagger(d) == c);
    CHECK(structuralDagger(Combinator::inv(c)) == c);
    CHECK(elimInv(Combinator::inv(c)) == d);
  }
}

TEST_CASE("fold annotations must be mu types") {
  CHECK_THROWS(Combinator::fold(Type::one()));
  CHECK_THROWS(Combinator::unfold(Type::sum(Type::one(), Type::one())));
  CHECK_NOTHROW(Combinator::fold(natType()));
}

TEST_CASE("unrollMu") {
  Type nat = natType();
  CHECK(unrollMu(nat) == Type::sum(Type::one(), nat));
}
