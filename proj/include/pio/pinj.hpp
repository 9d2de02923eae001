#ifndef PIO_PINJ_HPP
#define PIO_PINJ_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pio/errors.hpp"
#include "pio/syntax.hpp"
#include "pio/typecheck.hpp"

namespace pio::pinj {

// A finite set: elements are the indices 0..size-1. Labels, when present,
// are used for reporting only.
struct FinSet {
  int size = 0;
  std::vector<std::string> labels;
};

// Finite partial function between index sets; tbl[i] == -1 means undefined.
class Pfn {
 public:
  Pfn() = default;
  Pfn(int dom, int cod, std::vector<int> tbl);

  static Pfn identity(int n);
  static Pfn empty(int dom, int cod) { return Pfn(dom, cod, std::vector<int>(dom, -1)); }

  int domSize() const { return dom_; }
  int codSize() const { return cod_; }
  int apply(int i) const { return tbl_[static_cast<size_t>(i)]; }
  bool definedAt(int i) const { return apply(i) >= 0; }
  const std::vector<int>& table() const { return tbl_; }

  bool injective() const;
  bool total() const;

  bool operator==(const Pfn& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && tbl_ == o.tbl_;
  }
  bool operator!=(const Pfn& o) const { return !(*this == o); }

 private:
  int dom_ = 0;
  int cod_ = 0;
  std::vector<int> tbl_;
};

// Finite partial injection; a Pfn validated to be injective on its domain
// of definition.
class PInj {
 public:
  PInj() = default;
  explicit PInj(Pfn f);

  static PInj identity(int n) { return PInj(Pfn::identity(n)); }
  static PInj empty(int dom, int cod) { return PInj(Pfn::empty(dom, cod)); }

  const Pfn& fn() const { return f_; }
  int domSize() const { return f_.domSize(); }
  int codSize() const { return f_.codSize(); }
  int apply(int i) const { return f_.apply(i); }
  bool definedAt(int i) const { return f_.definedAt(i); }

  PInj dagger() const;

  bool operator==(const PInj& o) const { return f_ == o.f_; }
  bool operator!=(const PInj& o) const { return !(*this == o); }

 private:
  Pfn f_;
};

// g after f; throws ShapeMismatch when cod(f) != dom(g).
Pfn compose(const Pfn& g, const Pfn& f);
PInj compose(const PInj& g, const PInj& f);

// Disjoint union, left block first.
Pfn oplus(const Pfn& f, const Pfn& g);
PInj oplus(const PInj& f, const PInj& g);

// Product with row-major pairing (i, j) -> i*|B| + j.
Pfn otimes(const Pfn& f, const Pfn& g);
PInj otimes(const PInj& f, const PInj& g);

Pfn identity(int n);

// Particle trace of f : A+U -> B+U, where A is the splitA-prefix of the
// domain and B the splitB-prefix of the codomain. Iterates each token
// through the U-block; a revisited U-state can never exit, so the token
// falls outside the domain of the result.
Pfn trace(const Pfn& f, int splitA, int splitB);
PInj trace(const PInj& f, int splitA, int splitB);

bool equivalent(const Pfn& f, const Pfn& g);
bool equivalent(const PInj& f, const PInj& g);

// Uniform random partial injection between sets of the given sizes.
PInj randomPInj(std::mt19937_64& rng, int domSize, int codSize);

struct AxiomFinding {
  std::string axiom;
  int trials = 0;
  bool passed = true;
  std::string counterexample;  // dom/cod sizes plus graph when failed
};

struct TraceAxiomReport {
  std::vector<AxiomFinding> findings;
  bool allPassed() const {
    for (const auto& f : findings)
      if (!f.passed) return false;
    return true;
  }
};

// Evaluates both sides of each trace axiom (naturality, dinaturality,
// strength, vanishing I/II, yanking) on random instances over sets of size
// <= maxSize; exact graph equality.
TraceAxiomReport checkTraceAxioms(std::mt19937_64& rng, int trials, int maxSize = 6);

std::string describe(const Pfn& f);

// Compositional interpretation of a well-typed mu-free combinator as a
// partial injection; ground type variables are assigned finite sets. The
// ascription resolves the type when the combinator alone is ambiguous.
PInj denote(const Combinator& c, std::optional<CombinatorType> ascription = {},
            const std::map<std::string, FinSet>& groundSizes = {});

// Size of the denotation of a mu-free type.
int denoteTypeSize(const Type& t, const std::map<std::string, FinSet>& groundSizes);

}  // namespace pio::pinj

#endif
