#include "doctest.h"

#include <random>

#include "pio/finrel.hpp"
#include "pio/interp.hpp"
#include "pio/parser.hpp"

using namespace pio;
using namespace pio::rel;

namespace {

Relation randomRelation(std::mt19937_64& rng, int dom, int cod) {
  Relation r(dom, cod);
  for (int d = 0; d < dom; ++d)
    for (int c = 0; c < cod; ++c)
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) r.set(d, c);
  return r;
}

}  // namespace

TEST_CASE("relation algebra: dagger and composition") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto sz = [&] { return std::uniform_int_distribution<int>(0, 5)(rng); };
    int a = sz(), b = sz(), c = sz();
    Relation r = randomRelation(rng, a, b);
    Relation s = randomRelation(rng, b, c);
    CHECK(compose(s, r).dagger() == compose(r.dagger(), s.dagger()));
    CHECK(r.dagger().dagger() == r);
    CHECK(compose(Relation::identity(b), r) == r);
    CHECK(compose(s, Relation::identity(b)) == s);
  }
}

TEST_CASE("groupoid corpus covers every groupoid up to 3 objects, 6 morphisms") {
  auto corpus = groupoidCorpus();
  CHECK(corpus.size() == 30);
  for (const auto& g : corpus) {
    INFO(g.name);
    CHECK_NOTHROW(g.validate());
    CHECK(g.objects <= 3);
    CHECK(g.morphisms <= 6);
  }
}

TEST_CASE("trivial groupoid induces the singleton monoid") {
  auto corpus = groupoidCorpus();
  RelMonoid m = groupoidToFrobenius(corpus[0]);  // c1
  CHECK(m.carrier == 1);
  CHECK(checkMonoidLaws(m).ok);
  CHECK(checkFrobenius(m).ok);
}

TEST_CASE("two-object discrete groupoid: unit relates to both identities") {
  FiniteGroupoid disc;
  for (const auto& g : groupoidCorpus())
    if (g.name == "c1+c1") disc = g;
  RelMonoid m = groupoidToFrobenius(disc);
  CHECK(m.carrier == 2);
  CHECK(m.unit.at(0, 0));
  CHECK(m.unit.at(0, 1));
  CHECK(checkFrobenius(m).ok);
}

TEST_CASE("every corpus groupoid induces a monoid satisfying the Frobenius law") {
  for (const auto& g : groupoidCorpus()) {
    RelMonoid m = groupoidToFrobenius(g);
    INFO(g.name);
    CHECK(checkMonoidLaws(m).ok);
    CHECK(checkFrobenius(m).ok);
  }
}

TEST_CASE("the meet monoid is a monoid but fails the Frobenius law") {
  RelMonoid m = meetMonoid();
  CHECK(checkMonoidLaws(m).ok);
  CheckResult frob = checkFrobenius(m);
  CHECK(!frob.ok);
  CHECK(!frob.witness.empty());
}

TEST_CASE("the constant-to-first-element multiplication fails Frobenius") {
  CheckResult frob = checkFrobenius(constFirstMonoid());
  CHECK(!frob.ok);
}

TEST_CASE("kleisli dagger: identity, involution, contravariance") {
  std::mt19937_64 rng(7);
  std::vector<RelMonoid> monoids;
  for (const auto& g : groupoidCorpus())
    if (g.morphisms <= 4) monoids.push_back(groupoidToFrobenius(g));
  for (const auto& m : monoids) {
    // dagger of the Kleisli identity is the Kleisli identity
    for (int x = 1; x <= 3; ++x) {
      Relation eta = kleisliId(x, m);
      CHECK(kleisliDagger(eta, m) == eta);
    }
    for (int trial = 0; trial < 50; ++trial) {
      int x = std::uniform_int_distribution<int>(1, 3)(rng);
      int y = std::uniform_int_distribution<int>(1, 3)(rng);
      int z = std::uniform_int_distribution<int>(1, 3)(rng);
      Relation f = randomRelation(rng, x, y * m.carrier);
      Relation g = randomRelation(rng, y, z * m.carrier);
      CHECK(kleisliDagger(kleisliDagger(f, m), m) == f);
      Relation lhs = kleisliDagger(kleisliCompose(g, f, m), m);
      Relation rhs = kleisliCompose(kleisliDagger(f, m), kleisliDagger(g, m), m);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("free algebras of Frobenius monoids are FEM algebras") {
  for (const auto& g : groupoidCorpus()) {
    RelMonoid m = groupoidToFrobenius(g);
    for (int x = 1; x <= 2; ++x) {
      RelAlgebra alg = freeAlgebra(m, x);
      INFO(g.name << " free on " << x);
      CHECK(checkEMLaws(alg).ok);
      CHECK(checkFEM(alg).ok);
    }
  }
}

TEST_CASE("disjoint groupoid-action algebras are FEM algebras") {
  for (const RelAlgebra& alg : {z2SwapActionAlgebra(), discreteActionAlgebra()}) {
    INFO(alg.name);
    CHECK(checkEMLaws(alg).ok);
    CHECK(checkFEM(alg).ok);
  }
}

TEST_CASE("EM-but-not-FEM: search discovers the pinned algebra") {
  // groupoid-induced monads on Rel admit no such algebra at this size
  RelMonoid z2 = groupoidToFrobenius(groupoidCorpus()[1]);
  CHECK(!searchEMnotFEM(z2, 2).has_value());
  // the non-Frobenius meet monoid does
  auto found = searchEMnotFEM(meetMonoid(), 2);
  REQUIRE(found.has_value());
  CHECK(checkEMLaws(*found).ok);
  CHECK(!checkFEM(*found).ok);
  // pinned: the free meet algebra on one generator, min as the action
  RelAlgebra pinned = pinnedNonFemAlgebra();
  CHECK(checkEMLaws(pinned).ok);
  CheckResult fem = checkFEM(pinned);
  CHECK(!fem.ok);
  CHECK(!fem.witness.empty());
}

TEST_CASE("correct-splitting chain passes all ambilimit checks") {
  AmbilimitReport rep = checkAmbilimitLaws(correctSplitChain(6));
  for (const auto& it : rep.items) {
    INFO(it.check << ": " << it.counterexample);
    CHECK(it.passed);
  }
  CHECK(rep.allPassed());
}

TEST_CASE("min-splitting chain fails exactly the canonical-map check") {
  AmbilimitReport rep = checkAmbilimitLaws(minSplitChain(5));
  REQUIRE(!rep.items.empty());
  for (const auto& it : rep.items) {
    INFO(it.check << ": " << it.counterexample);
    if (it.check == "canonical map D(N) <-> apex is a bijection") {
      CHECK(!it.passed);
    } else {
      CHECK(it.passed);
    }
  }
}

TEST_CASE("single-object chain with identities passes trivially") {
  ChainData c;
  c.name = "trivial";
  c.sizes = {1};
  c.apexSize = 1;
  c.p = {pinj::Pfn::identity(1)};
  c.i = {pinj::Pfn::identity(1)};
  CHECK(checkAmbilimitLaws(c).allPassed());
}

TEST_CASE("adamek approximant sizes") {
  PolyFunctor nat{"x", parseType("1+x")};
  AdamekApproximant a = adamekApproximant(nat, 5);
  CHECK(a.sizes == std::vector<int>{0, 1, 2, 3, 4});

  PolyFunctor tree{"x", parseType("1+x*x")};
  CHECK(adamekApproximant(tree, 4).sizes == std::vector<int>{0, 1, 2, 5});

  PolyFunctor constant{"x", parseType("1")};
  CHECK(adamekApproximant(constant, 4).sizes == std::vector<int>{0, 1, 1, 1});

  PolyFunctor doubling{"x", parseType("(1+1)*x")};
  CHECK(adamekApproximant(doubling, 4).sizes == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("approximant sizes match the interpreter's approximants") {
  PolyFunctor nat{"x", parseType("1+x")};
  AdamekApproximant a = adamekApproximant(nat, 5);
  for (int d = 0; d < 5; ++d)
    CHECK(static_cast<int>(unrollMuApproximant(parseType("mu x. 1+x"), d).size()) ==
          a.sizes[static_cast<size_t>(d)]);
}

TEST_CASE("approximant embeddings split and the chain is an ambilimit") {
  for (const char* body : {"1+x", "1+x*x", "(1+1)*x", "1"}) {
    PolyFunctor f{"x", parseType(body)};
    for (int stages = 2; stages <= 4; ++stages) {
      ChainData c = adamekChain(f, stages);
      INFO(body << " at " << stages << " stages");
      CHECK(checkAmbilimitLaws(c).allPassed());
    }
  }
}

TEST_CASE("checkInitialAlgebraApprox") {
  CHECK(checkInitialAlgebraApprox({"x", parseType("1+x")}, 4).ok);
  CHECK(checkInitialAlgebraApprox({"x", parseType("1+x*x")}, 4).ok);
  CHECK(checkInitialAlgebraApprox({"x", parseType("(1+1)*x")}, 4).ok);
  CHECK(checkInitialAlgebraApprox({"x", parseType("1")}, 4).ok);
  CHECK(checkInitialAlgebraApprox({"x", parseType("x")}, 4).ok);
  CHECK_THROWS_AS(checkInitialAlgebraApprox({"x", parseType("mu y. 1+y")}, 3),
                  NotPolynomial);
}

TEST_CASE("corpus file round trips") {
  FiniteGroupoid g;
  for (const auto& cand : groupoidCorpus())
    if (cand.name == "pair2") g = cand;
  std::string text = printGroupoidFile(g);
  FiniteGroupoid back = parseGroupoidFile(text);
  CHECK(back.name == g.name);
  CHECK(back.comp == g.comp);
  CHECK(printGroupoidFile(back) == text);

  RelMonoid m = meetMonoid();
  RelMonoid mBack = parseMonoidFile(printMonoidFile(m));
  CHECK(mBack.mult == m.mult);
  CHECK(mBack.unit == m.unit);

  ChainData c = correctSplitChain(4);
  ChainData cBack = parseChainFile(printChainFile(c));
  CHECK(cBack.sizes == c.sizes);
  CHECK(checkAmbilimitLaws(cBack).allPassed());
}

TEST_CASE("malformed corpus files are rejected") {
  CHECK_THROWS(parseGroupoidFile("groupoid broken\nobjects 1\n"));
  CHECK_THROWS_AS(parseGroupoidFile(
                      "groupoid bad\nobjects 1\nmorphisms 1\nsrc 0\ntgt 0\nid 0\n"
                      "inv 0\ncomp\n-\n"),
                  InvalidGroupoid);
}
