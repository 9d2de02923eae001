#include "doctest.h"

#include <random>

#include "pio/parser.hpp"

using namespace pio;

namespace {

Type randomType(std::mt19937_64& rng, int depth, std::vector<std::string>& scope) {
  int hi = depth == 0 ? (scope.empty() ? 1 : 2) : 5;
  int k = std::uniform_int_distribution<int>(0, hi)(rng);
  if (k == 2 && scope.empty()) k = 1;
  switch (k) {
    case 0: return Type::zero();
    case 1: return Type::one();
    case 2: return Type::var(scope[std::uniform_int_distribution<size_t>(0, scope.size() - 1)(rng)]);
    case 3: return Type::sum(randomType(rng, depth - 1, scope), randomType(rng, depth - 1, scope));
    case 4: return Type::prod(randomType(rng, depth - 1, scope), randomType(rng, depth - 1, scope));
    default: {
      std::string name = "v" + std::to_string(scope.size());
      scope.push_back(name);
      Type body = randomType(rng, depth - 1, scope);
      scope.pop_back();
      return Type::mu(name, body);
    }
  }
}

Value randomValue(std::mt19937_64& rng, int depth) {
  int k = depth == 0 ? 0 : std::uniform_int_distribution<int>(0, 4)(rng);
  switch (k) {
    case 0: return Value::unit();
    case 1: return Value::inl(randomValue(rng, depth - 1));
    case 2: return Value::inr(randomValue(rng, depth - 1));
    case 3: return Value::fold(randomValue(rng, depth - 1));
    default:
      return Value::pair(randomValue(rng, depth - 1), randomValue(rng, depth - 1));
  }
}

Combinator randomComb(std::mt19937_64& rng, int depth) {
  if (depth == 0) {
    int p = std::uniform_int_distribution<int>(0, 14)(rng);
    return Combinator::basic(static_cast<Prim>(p));
  }
  int k = std::uniform_int_distribution<int>(0, 5)(rng);
  switch (k) {
    case 0:
      return Combinator::comp(randomComb(rng, depth - 1), randomComb(rng, depth - 1));
    case 1:
      return Combinator::sum(randomComb(rng, depth - 1), randomComb(rng, depth - 1));
    case 2:
      return Combinator::prod(randomComb(rng, depth - 1), randomComb(rng, depth - 1));
    case 3:
      return Combinator::trace(randomComb(rng, depth - 1));
    case 4:
      return Combinator::inv(randomComb(rng, depth - 1));
    default: {
      std::vector<std::string> scope;
      std::mt19937_64 r2(rng());
      for (;;) {
        std::string n = "t" + std::to_string(std::uniform_int_distribution<int>(0, 9)(r2));
        scope.clear();
        scope.push_back(n);
        Type body = randomType(r2, 2, scope);
        Type ann = Type::mu(n, body);
        if (ann.kind() == Type::Kind::Mu)
          return std::uniform_int_distribution<int>(0, 1)(rng) ? Combinator::fold(ann)
                                                               : Combinator::unfold(ann);
      }
    }
  }
}

}  // namespace

TEST_CASE("parseType basics") {
  CHECK(parseType("1 + 1") == Type::sum(Type::one(), Type::one()));
  CHECK(parseType("mu x. 1 + x") ==
        Type::mu("x", Type::sum(Type::one(), Type::var("x"))));
  CHECK(parseType("(1 + 1) * 0") ==
        Type::prod(Type::sum(Type::one(), Type::one()), Type::zero()));
}

TEST_CASE("type operator precedence and associativity") {
  // * binds tighter than +, both right-associative
  CHECK(parseType("1 + 1 * 0") ==
        Type::sum(Type::one(), Type::prod(Type::one(), Type::zero())));
  CHECK(parseType("1 + 1 + 0") ==
        Type::sum(Type::one(), Type::sum(Type::one(), Type::zero())));
  CHECK(parseType("1 * 1 * 0") ==
        Type::prod(Type::one(), Type::prod(Type::one(), Type::zero())));
  // mu extends as far right as possible
  CHECK(parseType("mu x. 1 + x * x") ==
        Type::mu("x", Type::sum(Type::one(), Type::prod(Type::var("x"), Type::var("x")))));
}

TEST_CASE("parseCombinator basics") {
  CHECK(parseCombinator("swap+") == Combinator::basic(Prim::SwapPlus));
  CHECK(parseCombinator("swap+ ; swap+") ==
        Combinator::comp(Combinator::basic(Prim::SwapPlus),
                         Combinator::basic(Prim::SwapPlus)));
  CHECK(parseCombinator("trace(swap+)") ==
        Combinator::trace(Combinator::basic(Prim::SwapPlus)));
  CHECK(parseCombinator("id (+) swap*") ==
        Combinator::sum(Combinator::basic(Prim::Id), Combinator::basic(Prim::SwapTimes)));
  CHECK(parseCombinator("fold[mu x. 1 + x]") ==
        Combinator::fold(Type::mu("x", Type::sum(Type::one(), Type::var("x")))));
  CHECK(parseCombinator("inv(distrib)") ==
        Combinator::inv(Combinator::basic(Prim::Distrib)));
}

TEST_CASE("parseValue basics") {
  CHECK(parseValue("inl ()") == Value::inl(Value::unit()));
  CHECK(parseValue("(inl (), ())") ==
        Value::pair(Value::inl(Value::unit()), Value::unit()));
  CHECK(parseValue("fold (inr (fold (inl ())))") ==
        Value::fold(Value::inr(Value::fold(Value::inl(Value::unit())))));
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parseType("1 +"), SyntaxError);
  CHECK_THROWS_AS(parseValue("inl"), SyntaxError);
  CHECK_THROWS_AS(parseCombinator("fold"), SyntaxError);
  CHECK_THROWS_AS(parseCombinator("nosuch"), SyntaxError);
  try {
    parseType("1 +\n+ 1");
    FAIL("expected throw");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 1);
  }
}

TEST_CASE("round trip: parse after print is the identity on ASTs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> scope;
    Type t = randomType(rng, 6, scope);
    CHECK(parseType(printType(t)) == t);
  }
  for (int i = 0; i < 500; ++i) {
    Value v = randomValue(rng, 6);
    CHECK(parseValue(printValue(v)) == v);
  }
  for (int i = 0; i < 500; ++i) {
    Combinator c = randomComb(rng, 4);
    CHECK(parseCombinator(printCombinator(c)) == c);
  }
}

TEST_CASE("printing after parsing is idempotent formatting") {
  std::vector<std::string> types = {"((1+1))*0", "mu x.(1+x)", "1 +(0* 1)"};
  for (const auto& s : types) {
    std::string once = printType(parseType(s));
    CHECK(printType(parseType(once)) == once);
  }
  std::vector<std::string> combs = {"(swap+ ; id) ; distrib", "id(+)(id(*)id)",
                                    "trace((swap+ ; swap+))"};
  for (const auto& s : combs) {
    std::string once = printCombinator(parseCombinator(s));
    CHECK(printCombinator(parseCombinator(once)) == once);
  }
}

TEST_CASE("program parsing resolves references and main") {
  std::string src =
      "-- toggles a bit\n"
      "not : 1+1 <-> 1+1 = swap+\n"
      "notnot : 1+1 <-> 1+1 = not ; not\n"
      "main = notnot\n";
  SourceProgram p = parseProgram(src);
  REQUIRE(p.declarations.size() == 2);
  CHECK(p.declarations[0].name == "not");
  CHECK(p.declarations[1].body ==
        Combinator::comp(Combinator::basic(Prim::SwapPlus),
                         Combinator::basic(Prim::SwapPlus)));
  REQUIRE(p.entry.has_value());
  CHECK(*p.entry == "notnot");
  CHECK(p.entryDeclaration()->name == "notnot");
}

TEST_CASE("program errors: duplicates, unknown references, forward refs") {
  CHECK_THROWS_AS(parseProgram("f : 1 <-> 1 = id\nf : 1 <-> 1 = id\n"), SyntaxError);
  CHECK_THROWS_AS(parseProgram("f : 1 <-> 1 = g\n"), SyntaxError);
  CHECK_THROWS_AS(parseProgram("f : 1 <-> 1 = g\ng : 1 <-> 1 = id\n"), SyntaxError);
  CHECK_THROWS_AS(parseProgram("main = nosuch\n"), SyntaxError);
}

TEST_CASE("program print-parse round trip") {
  std::string src =
      "not : 1+1 <-> 1+1 = swap+\n"
      "dance : (1+1)*1 <-> (1*1)+(1*1) = distrib ; (id (+) id)\n"
      "main = dance\n";
  SourceProgram p = parseProgram(src);
  SourceProgram q = parseProgram(printProgram(p));
  REQUIRE(q.declarations.size() == p.declarations.size());
  for (size_t i = 0; i < p.declarations.size(); ++i) {
    CHECK(q.declarations[i].name == p.declarations[i].name);
    CHECK(q.declarations[i].body == p.declarations[i].body);
    CHECK(q.declarations[i].ascription->first == p.declarations[i].ascription->first);
    CHECK(q.declarations[i].ascription->second == p.declarations[i].ascription->second);
  }
  CHECK(q.entry == p.entry);
}
