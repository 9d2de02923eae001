#ifndef PIO_FINREL_HPP
#define PIO_FINREL_HPP

#include <optional>
#include <string>
#include <vector>

#include "pio/errors.hpp"
#include "pio/pinj.hpp"
#include "pio/syntax.hpp"

namespace pio::rel {

// Morphism of finite relations as a dense boolean matrix, |cod| x |dom|.
class Relation {
 public:
  Relation() = default;
  Relation(int dom, int cod) : dom_(dom), cod_(cod), m_(size_t(dom) * size_t(cod), 0) {}

  static Relation identity(int n);
  static Relation fromPfn(const pinj::Pfn& f);

  int domSize() const { return dom_; }
  int codSize() const { return cod_; }
  bool at(int d, int c) const { return m_[idx(d, c)] != 0; }
  void set(int d, int c, bool v = true) { m_[idx(d, c)] = v ? 1 : 0; }

  Relation dagger() const;  // transpose

  bool operator==(const Relation& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && m_ == o.m_;
  }
  bool operator!=(const Relation& o) const { return !(*this == o); }

 private:
  size_t idx(int d, int c) const { return size_t(c) * size_t(dom_) + size_t(d); }
  int dom_ = 0;
  int cod_ = 0;
  std::vector<char> m_;
};

Relation compose(const Relation& s, const Relation& r);  // s after r
Relation oplus(const Relation& f, const Relation& g);
Relation otimes(const Relation& f, const Relation& g);   // row-major pairing
std::string describe(const Relation& r);

class InvalidGroupoid : public std::runtime_error {
 public:
  explicit InvalidGroupoid(const std::string& m) : std::runtime_error(m) {}
};

// Finite groupoid as explicit composition tables. comp[f][g] is the index
// of f.g (g applied first), or -1 when src(f) != tgt(g).
struct FiniteGroupoid {
  std::string name;
  int objects = 0;
  int morphisms = 0;
  std::vector<int> src, tgt;
  std::vector<int> idOf;  // identity morphism per object
  std::vector<std::vector<int>> comp;
  std::vector<int> inv;

  void validate() const;  // throws InvalidGroupoid
};

struct RelMonoid {
  std::string name;
  int carrier = 0;
  Relation mult;  // carrier x carrier -> carrier
  Relation unit;  // 1 -> carrier
};

// Multiplication by composition, unit relating to every identity.
RelMonoid groupoidToFrobenius(const FiniteGroupoid& g);

struct CheckResult {
  bool ok = true;
  std::string witness;
};

CheckResult checkMonoidLaws(const RelMonoid& m);
// (mult x id).(id x mult^) = mult^.mult = (id x mult).(mult^ x id)
CheckResult checkFrobenius(const RelMonoid& m);

// Kleisli structure of the monad - (x) B on FinRel.
Relation kleisliId(int xSize, const RelMonoid& m);                    // eta_X
Relation kleisliCompose(const Relation& g, const Relation& f, const RelMonoid& m);
// T(f^) . mu^ . eta, for f : X -> Y x B with |Y| = cod(f)/|B|.
Relation kleisliDagger(const Relation& f, const RelMonoid& m);

struct RelAlgebra {
  std::string name;
  RelMonoid monoid;
  int carrier = 0;
  Relation action;  // carrier x B -> carrier
};

CheckResult checkEMLaws(const RelAlgebra& alg);
// T(a) . mu^ must be self-adjoint.
CheckResult checkFEM(const RelAlgebra& alg);

RelAlgebra freeAlgebra(const RelMonoid& m, int xSize);
// Exhaustive search for an algebra satisfying the EM laws but failing the
// FEM law, over carriers of size <= maxCarrier.
std::optional<RelAlgebra> searchEMnotFEM(const RelMonoid& m, int maxCarrier);

// ---- corpus ----

// Every groupoid with at most 3 objects and at most 6 morphisms, up to
// isomorphism, assembled from the groups of order <= 6 and the pair
// groupoid.
std::vector<FiniteGroupoid> groupoidCorpus();

RelMonoid meetMonoid();        // genuine monoid in Rel; fails Frobenius
RelMonoid constFirstMonoid();  // constant-to-first-element multiplication
// Z/2 on {0,1,2,3} swapping 0<->1 and 2<->3.
RelAlgebra z2SwapActionAlgebra();
// Two-object discrete groupoid acting on {0,1} u {2}.
RelAlgebra discreteActionAlgebra();
// The EM-but-not-FEM algebra pinned from searchEMnotFEM(meetMonoid(), 2).
RelAlgebra pinnedNonFemAlgebra();

// ---- chains and ambilimits ----

struct ChainData {
  std::string name;
  std::vector<int> sizes;       // |D(0)| .. |D(N)|
  std::vector<pinj::Pfn> e;     // e[n] : D(n) -> D(n+1)
  std::vector<pinj::Pfn> q;     // q[n] : D(n+1) -> D(n)
  int apexSize = 0;
  std::vector<pinj::Pfn> p;     // p[n] : L -> D(n)
  std::vector<pinj::Pfn> i;     // i[n] : D(n) -> L
};

struct AmbilimitReport {
  struct Item {
    std::string check;
    bool passed = true;
    std::string counterexample;
  };
  std::vector<Item> items;
  bool allPassed() const {
    for (const auto& it : items)
      if (!it.passed) return false;
    return true;
  }
};

// Checks, in order: the split premise q_n e_n = id, cone/cocone
// commutation, normalization, commuting idempotents, the connecting-map
// formula p_m i_n, and the canonical-map bijection between D(N) and the
// apex. The last check is what separates the truncated min-splitting chain
// from the correct splitting.
AmbilimitReport checkAmbilimitLaws(const ChainData& c);

ChainData correctSplitChain(int n);
ChainData minSplitChain(int n);

// ---- polynomial functors and Adamek approximants ----

struct PolyFunctor {
  std::string var;
  Type body;  // built from 0, 1, +, *, and var
};

struct AdamekApproximant {
  std::vector<int> sizes;
  std::vector<pinj::Pfn> embeddings;   // S_n -> S_{n+1}
  std::vector<pinj::Pfn> projections;  // S_{n+1} -> S_n
};

AdamekApproximant adamekApproximant(const PolyFunctor& f, int stages);
// The approximant chain with the last stage as apex.
ChainData adamekChain(const PolyFunctor& f, int stages);

// Canonical index of an interpreter value of fold-depth < stage in the
// stage set of the approximant.
int stageIndexOfValue(const PolyFunctor& f, int stage, const Value& v);

// Levelwise stabilization: stage k+1 restricted along the embedding is
// stage k, and interpreter fold-values of depth < k biject with stage k.
CheckResult checkInitialAlgebraApprox(const PolyFunctor& f, int stages);

// ---- plain-text corpus files ----

FiniteGroupoid parseGroupoidFile(const std::string& text);
std::string printGroupoidFile(const FiniteGroupoid& g);
RelMonoid parseMonoidFile(const std::string& text);
std::string printMonoidFile(const RelMonoid& m);
ChainData parseChainFile(const std::string& text);
std::string printChainFile(const ChainData& c);

}  // namespace pio::rel

#endif
