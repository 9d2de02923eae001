#include "doctest.h"

#include <set>

#include "pio/interp.hpp"
#include "pio/parser.hpp"
#include "pio/typecheck.hpp"

using namespace pio;

namespace {

Type T(const char* s) { return parseType(s); }
Combinator C(const char* s) { return parseCombinator(s); }
Value V(const char* s) { return parseValue(s); }

Type natT() { return T("mu x. 1+x"); }

}  // namespace

TEST_CASE("basic combinator actions") {
  CHECK(evalBasic(C("swap+"), V("inl ()")) == EvalResult::defined(V("inr ()")));
  CHECK(evalBasic(C("swap+"), V("inr ()")) == EvalResult::defined(V("inl ()")));
  CHECK(evalBasic(C("distrib"), V("(inr (), ())")) ==
        EvalResult::defined(V("inr ((), ())")));
  CHECK(evalBasic(C("unfold[mu x. 1+x]"), V("fold (inl ())")) ==
        EvalResult::defined(V("inl ()")));
  CHECK(evalBasic(C("unitl+"), V("inr (inl ())")) ==
        EvalResult::defined(V("inl ()")));
  CHECK(evalBasic(C("unitr+"), V("()")) == EvalResult::defined(V("inr ()")));
  CHECK(evalBasic(C("assocl+"), V("inr (inl ())")) ==
        EvalResult::defined(V("inl (inr ())")));
  CHECK(evalBasic(C("assocl*"), V("((), (inl (), ()))")) ==
        EvalResult::defined(V("(((), inl ()), ())")));
  CHECK(evalBasic(C("unitl*"), V("((), inr ())")) ==
        EvalResult::defined(V("inr ()")));
  CHECK(evalBasic(C("swap*"), V("(inl (), ())")) ==
        EvalResult::defined(V("((), inl ())")));
  CHECK(evalBasic(C("factor"), V("inl ((), inr ())")) ==
        EvalResult::defined(V("(inl (), inr ())")));
  CHECK(evalBasic(C("fold[mu x. 1+x]"), V("inl ()")) ==
        EvalResult::defined(V("fold (inl ())")));
}

TEST_CASE("basic combinators reject ill-shaped values") {
  CHECK_THROWS_AS(evalBasic(C("unitl+"), V("inl ()")), InternalTypeError);
  CHECK_THROWS_AS(evalBasic(C("swap*"), V("()")), InternalTypeError);
  CHECK_THROWS_AS(evalBasic(C("absorb"), V("((), ())")), InternalTypeError);
  CHECK_THROWS_AS(evalBasic(C("unabsorb"), V("()")), InternalTypeError);
}

TEST_CASE("eval composes in diagram order") {
  CHECK(eval(C("swap+ ; swap+"), V("inl ()")) == EvalResult::defined(V("inl ()")));
  CHECK(eval(C("unitr+ ; swap+"), V("()")) == EvalResult::defined(V("inl ()")));
}

TEST_CASE("eval dispatches sums and products") {
  CHECK(eval(C("swap+ (+) id"), V("inl (inl ())")) ==
        EvalResult::defined(V("inl (inr ())")));
  CHECK(eval(C("swap+ (+) id"), V("inr ()")) == EvalResult::defined(V("inr ()")));
  CHECK(eval(C("swap+ (*) id"), V("(inl (), ())")) ==
        EvalResult::defined(V("(inr (), ())")));
}

TEST_CASE("trace: yanking gives the identity") {
  Combinator yank = C("trace(swap+)");
  for (const auto& v : enumerateValues(T("1+1")))
    CHECK(eval(yank, v) == EvalResult::defined(v));
}

TEST_CASE("trace of the identity exits immediately") {
  // id : (a+u) <-> (a+u) feeds every token straight back out, so the trace
  // is the identity on a; this matches the denotational trace, where the
  // A,B block of id is the identity and the A,U block is empty.
  Combinator tid = C("trace(id (+) id)");
  for (const auto& v : enumerateValues(T("1+1")))
    CHECK(eval(tid, v) == EvalResult::defined(v));
}

TEST_CASE("trace: three-step rotation walks the loop") {
  // assocr+ ; swap+ on (1+1)+1 rotates indices 0->2->1->0; traced over the
  // last block it swaps the two remaining elements.
  Combinator rot = C("trace(assocr+ ; swap+)");
  CHECK(eval(rot, V("inl ()")) == EvalResult::defined(V("inr ()")));
  CHECK(eval(rot, V("inr ()")) == EvalResult::defined(V("inl ()")));
}

TEST_CASE("divergent mu trace runs out of fuel") {
  // fold ; unitr+ : 1+N <-> 0+N acts as n -> n+1 on the loop, so the token
  // never exits and never revisits a state.
  Combinator omega = C("trace(fold[mu x. 1+x] ; unitr+)");
  auto ct = inferCombinator(omega);
  CHECK(ct.dom == T("1"));
  CHECK(ct.cod == T("0"));
  Fuel fuel;
  fuel.maxTraceSteps = 50;
  EvalResult r = eval(omega, V("()"), fuel);
  CHECK(r.kind() == EvalResult::Kind::OutOfFuel);
}

TEST_CASE("run and runBackward invert each other on defined points") {
  std::vector<std::pair<const char*, const char*>> progs = {
      {"swap+ ; (swap+ (+) id)", "1+(1+1)"},
      {"distrib", "(1+1)*(1+1)"},
      {"trace(assocr+ ; swap+)", "1+1"},
      {"inv(distrib)", "(1*(1+1))+(1*(1+1))"},
  };
  for (auto& [src, domSrc] : progs) {
    Combinator c = C(src);
    Type dom = T(domSrc);
    for (const auto& v : enumerateValues(dom)) {
      EvalResult fwd = run(c, v);
      REQUIRE(fwd.isDefined());
      EvalResult back = runBackward(c, fwd.value());
      REQUIRE(back.isDefined());
      CHECK(back.value() == v);
    }
  }
}

TEST_CASE("runBackward examples") {
  CHECK(runBackward(C("swap+"), V("inr ()")) == EvalResult::defined(V("inl ()")));
  CHECK(runBackward(C("fold[mu x. 1+x]"), V("fold (inl ())")) ==
        EvalResult::defined(V("inl ()")));
}

TEST_CASE("injectivity of run over defined outputs") {
  std::vector<std::pair<const char*, const char*>> progs = {
      {"distrib ; (swap* (+) id)", "(1+1)*(1+1)"},
      {"trace(assocr+ ; swap+)", "1+1"},
  };
  for (auto& [src, domSrc] : progs) {
    Combinator c = C(src);
    std::set<Value> seen;
    for (const auto& v : enumerateValues(T(domSrc))) {
      EvalResult r = run(c, v);
      if (r.isDefined()) CHECK(seen.insert(r.value()).second);
    }
  }
}

TEST_CASE("trace loop replay is deterministic") {
  Combinator rot = C("trace(assocr+ ; swap+)");
  Fuel fuel;
  for (int i = 0; i < 10; ++i)
    CHECK(eval(rot, V("inl ()"), fuel) == EvalResult::defined(V("inr ()")));
}

TEST_CASE("unrollMuApproximant enumerates numerals by fold depth") {
  auto vs = unrollMuApproximant(natT(), 3);
  REQUIRE(vs.size() == 3);
  CHECK(vs[0] == V("fold (inl ())"));
  CHECK(vs[1] == V("fold (inr (fold (inl ())))"));
  CHECK(vs[2] == V("fold (inr (fold (inr (fold (inl ())))))"));
  CHECK(unrollMuApproximant(natT(), 0).empty());
}

TEST_CASE("unrollMuApproximant on a branching functor") {
  Type tree = T("mu x. 1 + x*x");
  // stage sizes 0, 1, 2, 5 for F X = 1 + X*X
  CHECK(unrollMuApproximant(tree, 1).size() == 1);
  CHECK(unrollMuApproximant(tree, 2).size() == 2);
  CHECK(unrollMuApproximant(tree, 3).size() == 5);
}

TEST_CASE("stage monotonicity of approximants") {
  for (const char* src : {"mu x. 1+x", "mu x. 1 + x*x", "mu x. (1+1) + x"}) {
    Type t = T(src);
    for (int d = 0; d < 4; ++d) {
      auto small = unrollMuApproximant(t, d);
      auto big = unrollMuApproximant(t, d + 1);
      std::set<Value> bigSet(big.begin(), big.end());
      for (const auto& v : small) CHECK(bigSet.count(v) == 1);
    }
  }
}

TEST_CASE("unrollMuApproximant rejects non-polynomial bodies") {
  CHECK_THROWS_AS(unrollMuApproximant(T("mu x. 1 + y"), 2), NotPolynomial);
  CHECK_THROWS_AS(unrollMuApproximant(T("mu x. mu y. x + y"), 2), NotPolynomial);
  CHECK_THROWS_AS(unrollMuApproximant(T("1+1"), 2), NotPolynomial);
}

TEST_CASE("enumeration order is left block first, row major") {
  auto vs = enumerateValues(T("(1+1)*(1+1)"));
  REQUIRE(vs.size() == 4);
  CHECK(vs[0] == V("(inl (), inl ())"));
  CHECK(vs[1] == V("(inl (), inr ())"));
  CHECK(vs[2] == V("(inr (), inl ())"));
  CHECK(vs[3] == V("(inr (), inr ())"));
  for (size_t i = 0; i < vs.size(); ++i) {
    CHECK(indexOfValue(T("(1+1)*(1+1)"), vs[i]) == static_cast<std::int64_t>(i));
    CHECK(valueAtIndex(T("(1+1)*(1+1)"), static_cast<std::int64_t>(i)) == vs[i]);
  }
}

TEST_CASE("cardinality") {
  CHECK(typeCardinality(T("0")) == 0);
  CHECK(typeCardinality(T("(1+1)*(1+1+1)")) == 6);
  CHECK(!typeCardinality(T("mu x. 1+x")).has_value());
  CHECK(enumerateValues(T("0*(1+1)")).empty());
  CHECK_THROWS_AS(enumerateValues(natT()), HasMu);
}

TEST_CASE("bounded enumeration cuts mu subvalues at the given depth") {
  auto vs = enumerateValuesBounded(T("(mu x. 1+x) * (1+1)"), 2);
  CHECK(vs.size() == 4);  // 2 numerals x 2 bits
  for (const auto& v : vs) CHECK(checkValue(v, T("(mu x. 1+x) * (1+1)")));
}
