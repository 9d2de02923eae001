#include "pio/pinj.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pio/parser.hpp"
#include "pio/typecheck.hpp"

namespace pio::pinj {

Pfn::Pfn(int dom, int cod, std::vector<int> tbl)
    : dom_(dom), cod_(cod), tbl_(std::move(tbl)) {
  if (dom_ < 0 || cod_ < 0 || tbl_.size() != static_cast<size_t>(dom_))
    throw ShapeMismatch("partial function table has wrong length");
  for (int v : tbl_)
    if (v < -1 || v >= cod_)
      throw ShapeMismatch("partial function entry out of range");
}

Pfn Pfn::identity(int n) {
  std::vector<int> tbl(static_cast<size_t>(n));
  std::iota(tbl.begin(), tbl.end(), 0);
  return Pfn(n, n, std::move(tbl));
}

bool Pfn::injective() const {
  std::vector<char> hit(static_cast<size_t>(cod_), 0);
  for (int v : tbl_) {
    if (v < 0) continue;
    if (hit[static_cast<size_t>(v)]) return false;
    hit[static_cast<size_t>(v)] = 1;
  }
  return true;
}

bool Pfn::total() const {
  for (int v : tbl_)
    if (v < 0) return false;
  return true;
}

PInj::PInj(Pfn f) : f_(std::move(f)) {
  if (!f_.injective())
    throw ShapeMismatch("map is not injective on its domain of definition");
}

PInj PInj::dagger() const {
  std::vector<int> tbl(static_cast<size_t>(f_.codSize()), -1);
  for (int i = 0; i < f_.domSize(); ++i)
    if (f_.definedAt(i)) tbl[static_cast<size_t>(f_.apply(i))] = i;
  return PInj(Pfn(f_.codSize(), f_.domSize(), std::move(tbl)));
}

Pfn compose(const Pfn& g, const Pfn& f) {
  if (f.codSize() != g.domSize())
    throw ShapeMismatch("compose: cod(f) != dom(g)");
  std::vector<int> tbl(static_cast<size_t>(f.domSize()), -1);
  for (int i = 0; i < f.domSize(); ++i) {
    int m = f.apply(i);
    if (m >= 0) tbl[static_cast<size_t>(i)] = g.apply(m);
  }
  return Pfn(f.domSize(), g.codSize(), std::move(tbl));
}

PInj compose(const PInj& g, const PInj& f) { return PInj(compose(g.fn(), f.fn())); }

Pfn oplus(const Pfn& f, const Pfn& g) {
  int dom = f.domSize() + g.domSize();
  int cod = f.codSize() + g.codSize();
  std::vector<int> tbl(static_cast<size_t>(dom), -1);
  for (int i = 0; i < f.domSize(); ++i)
    if (f.definedAt(i)) tbl[static_cast<size_t>(i)] = f.apply(i);
  for (int j = 0; j < g.domSize(); ++j)
    if (g.definedAt(j))
      tbl[static_cast<size_t>(f.domSize() + j)] = f.codSize() + g.apply(j);
  return Pfn(dom, cod, std::move(tbl));
}

PInj oplus(const PInj& f, const PInj& g) { return PInj(oplus(f.fn(), g.fn())); }

Pfn otimes(const Pfn& f, const Pfn& g) {
  int dom = f.domSize() * g.domSize();
  int cod = f.codSize() * g.codSize();
  std::vector<int> tbl(static_cast<size_t>(dom), -1);
  for (int i = 0; i < f.domSize(); ++i) {
    for (int j = 0; j < g.domSize(); ++j) {
      if (f.definedAt(i) && g.definedAt(j))
        tbl[static_cast<size_t>(i * g.domSize() + j)] =
            f.apply(i) * g.codSize() + g.apply(j);
    }
  }
  return Pfn(dom, cod, std::move(tbl));
}

PInj otimes(const PInj& f, const PInj& g) { return PInj(otimes(f.fn(), g.fn())); }

Pfn identity(int n) { return Pfn::identity(n); }

Pfn trace(const Pfn& f, int splitA, int splitB) {
  int u = f.domSize() - splitA;
  if (splitA < 0 || splitB < 0 || u < 0 || f.codSize() - splitB != u)
    throw ShapeMismatch("trace: block sizes do not match");
  std::vector<int> tbl(static_cast<size_t>(splitA), -1);
  for (int a = 0; a < splitA; ++a) {
    std::vector<char> seen(static_cast<size_t>(u), 0);
    int pos = a;  // domain index
    for (;;) {
      int out = f.apply(pos);
      if (out < 0) break;           // undefined: token lost
      if (out < splitB) {           // exits into B
        tbl[static_cast<size_t>(a)] = out;
        break;
      }
      int state = out - splitB;     // stays in U
      if (seen[static_cast<size_t>(state)]) break;  // cycle: never exits
      seen[static_cast<size_t>(state)] = 1;
      pos = splitA + state;
    }
  }
  return Pfn(splitA, splitB, std::move(tbl));
}

PInj trace(const PInj& f, int splitA, int splitB) {
  return PInj(trace(f.fn(), splitA, splitB));
}

bool equivalent(const Pfn& f, const Pfn& g) {
  if (f.domSize() != g.domSize() || f.codSize() != g.codSize())
    throw ShapeMismatch("equivalent: unequal shapes");
  return f.table() == g.table();
}

bool equivalent(const PInj& f, const PInj& g) { return equivalent(f.fn(), g.fn()); }

PInj randomPInj(std::mt19937_64& rng, int domSize, int codSize) {
  std::vector<int> cods(static_cast<size_t>(codSize));
  std::iota(cods.begin(), cods.end(), 0);
  std::shuffle(cods.begin(), cods.end(), rng);
  std::vector<int> tbl(static_cast<size_t>(domSize), -1);
  size_t next = 0;
  for (int i = 0; i < domSize; ++i) {
    // each point defined with probability 1/2, hitting fresh targets
    if (next < cods.size() && std::uniform_int_distribution<int>(0, 1)(rng) == 1)
      tbl[static_cast<size_t>(i)] = cods[next++];
  }
  return PInj(Pfn(domSize, codSize, std::move(tbl)));
}

std::string describe(const Pfn& f) {
  std::ostringstream os;
  os << f.domSize() << "->" << f.codSize() << " {";
  bool first = true;
  for (int i = 0; i < f.domSize(); ++i) {
    if (!f.definedAt(i)) continue;
    if (!first) os << ", ";
    first = false;
    os << i << ":" << f.apply(i);
  }
  os << "}";
  return os.str();
}

namespace {

struct AxiomCheck {
  std::mt19937_64& rng;
  int maxSize;

  int size() { return std::uniform_int_distribution<int>(0, maxSize)(rng); }
  int sizeAtLeast(int lo) { return std::uniform_int_distribution<int>(lo, maxSize)(rng); }

  // Naturality in A and B: h . Tr(g) . f = Tr((h+id) . g . (f+id))
  std::optional<std::string> naturality() {
    int a = size(), b = size(), u = size(), a2 = size(), b2 = size();
    PInj g = randomPInj(rng, a + u, b + u);
    PInj f = randomPInj(rng, a2, a);
    PInj h = randomPInj(rng, b, b2);
    PInj lhs = compose(h, compose(trace(g, a, b), f));
    PInj inner = compose(oplus(h, PInj::identity(u)),
                         compose(g, oplus(f, PInj::identity(u))));
    PInj rhs = trace(inner, a2, b2);
    if (equivalent(lhs, rhs)) return std::nullopt;
    return "g=" + describe(g.fn()) + " f=" + describe(f.fn()) + " h=" + describe(h.fn());
  }

  // Dinaturality in U: Tr^U((id+g) . f) = Tr^{U'}(f . (id+g))
  std::optional<std::string> dinaturality() {
    int a = size(), b = size(), u = size(), u2 = size();
    PInj f = randomPInj(rng, a + u, b + u2);
    PInj g = randomPInj(rng, u2, u);
    PInj lhs = trace(compose(oplus(PInj::identity(b), g), f), a, b);
    PInj rhs = trace(compose(f, oplus(PInj::identity(a), g)), a, b);
    if (equivalent(lhs, rhs)) return std::nullopt;
    return "f=" + describe(f.fn()) + " g=" + describe(g.fn());
  }

  // Strength: g + Tr(f) = Tr(g + f), with the loop as the last block.
  std::optional<std::string> strength() {
    int a = size(), b = size(), u = size(), cc = size(), d = size();
    PInj f = randomPInj(rng, a + u, b + u);
    PInj g = randomPInj(rng, cc, d);
    PInj lhs = oplus(g, trace(f, a, b));
    PInj rhs = trace(oplus(g, f), cc + a, d + b);
    if (equivalent(lhs, rhs)) return std::nullopt;
    return "f=" + describe(f.fn()) + " g=" + describe(g.fn());
  }

  // Vanishing I: Tr^0(f) = f
  std::optional<std::string> vanishingI() {
    int a = size(), b = size();
    PInj f = randomPInj(rng, a, b);
    PInj lhs = trace(f, a, b);
    if (equivalent(lhs, f)) return std::nullopt;
    return "f=" + describe(f.fn());
  }

  // Vanishing II: Tr^{U+V}(f) = Tr^U(Tr^V(f))
  std::optional<std::string> vanishingII() {
    int a = size(), b = size(), u = size(), v = size();
    PInj f = randomPInj(rng, a + u + v, b + u + v);
    PInj lhs = trace(f, a, b);
    PInj rhs = trace(trace(f, a + u, b + u), a, b);
    if (equivalent(lhs, rhs)) return std::nullopt;
    return "f=" + describe(f.fn());
  }

  // Yanking: Tr^A(swap) = id
  std::optional<std::string> yanking() {
    int a = sizeAtLeast(0);
    std::vector<int> tbl(static_cast<size_t>(2 * a));
    for (int i = 0; i < a; ++i) {
      tbl[static_cast<size_t>(i)] = a + i;
      tbl[static_cast<size_t>(a + i)] = i;
    }
    PInj swap{Pfn(2 * a, 2 * a, std::move(tbl))};
    PInj lhs = trace(swap, a, a);
    if (equivalent(lhs, PInj::identity(a))) return std::nullopt;
    return "A size " + std::to_string(a);
  }
};

}  // namespace

TraceAxiomReport checkTraceAxioms(std::mt19937_64& rng, int trials, int maxSize) {
  AxiomCheck chk{rng, maxSize};
  using Fn = std::optional<std::string> (AxiomCheck::*)();
  std::vector<std::pair<std::string, Fn>> axioms = {
      {"naturality", &AxiomCheck::naturality},
      {"dinaturality", &AxiomCheck::dinaturality},
      {"strength", &AxiomCheck::strength},
      {"vanishing-I", &AxiomCheck::vanishingI},
      {"vanishing-II", &AxiomCheck::vanishingII},
      {"yanking", &AxiomCheck::yanking},
  };
  TraceAxiomReport report;
  for (auto& [name, fn] : axioms) {
    AxiomFinding finding;
    finding.axiom = name;
    for (int i = 0; i < trials; ++i) {
      auto bad = (chk.*fn)();
      ++finding.trials;
      if (bad) {
        finding.passed = false;
        finding.counterexample = *bad;
        break;
      }
    }
    report.findings.push_back(std::move(finding));
  }
  return report;
}

int denoteTypeSize(const Type& t, const std::map<std::string, FinSet>& groundSizes) {
  switch (t.kind()) {
    case Type::Kind::Zero:
      return 0;
    case Type::Kind::One:
      return 1;
    case Type::Kind::Sum:
      return denoteTypeSize(t.left(), groundSizes) + denoteTypeSize(t.right(), groundSizes);
    case Type::Kind::Prod:
      return denoteTypeSize(t.left(), groundSizes) * denoteTypeSize(t.right(), groundSizes);
    case Type::Kind::Var: {
      auto it = groundSizes.find(t.name());
      if (it == groundSizes.end())
        throw IllFormedType("denote: unassigned type variable " + t.name());
      return it->second.size;
    }
    case Type::Kind::Mu:
      throw HasMu("denote: mu type " + printType(t));
    case Type::Kind::Meta:
      throw IllFormedType("denote: metavariable");
  }
  return 0;
}

namespace {

PInj denoteNode(const Combinator& c, const TypedComb& node,
                const std::map<std::string, FinSet>& gs) {
  int domSize = denoteTypeSize(node.dom, gs);
  int codSize = denoteTypeSize(node.cod, gs);
  switch (c.kind()) {
    case Combinator::Kind::Basic: {
      switch (c.prim()) {
        // On the canonical enumeration (sum: left first, product:
        // row-major) the associators, additive units and distributors act
        // as the identity on indices.
        case Prim::Id:
        case Prim::AssocLPlus:
        case Prim::AssocRPlus:
        case Prim::UnitLPlus:
        case Prim::UnitRPlus:
        case Prim::AssocLTimes:
        case Prim::AssocRTimes:
        case Prim::UnitLTimes:
        case Prim::UnitRTimes:
        case Prim::Distrib:
        case Prim::Factor:
          return PInj::identity(domSize);
        case Prim::Absorb:
        case Prim::Unabsorb:
          return PInj::empty(domSize, codSize);
        case Prim::SwapPlus: {
          int l = denoteTypeSize(node.dom.left(), gs);
          int r = denoteTypeSize(node.dom.right(), gs);
          std::vector<int> tbl(static_cast<size_t>(l + r));
          for (int i = 0; i < l; ++i) tbl[static_cast<size_t>(i)] = r + i;
          for (int j = 0; j < r; ++j) tbl[static_cast<size_t>(l + j)] = j;
          return PInj(Pfn(l + r, l + r, std::move(tbl)));
        }
        case Prim::SwapTimes: {
          int l = denoteTypeSize(node.dom.left(), gs);
          int r = denoteTypeSize(node.dom.right(), gs);
          std::vector<int> tbl(static_cast<size_t>(l * r));
          for (int i = 0; i < l; ++i)
            for (int j = 0; j < r; ++j)
              tbl[static_cast<size_t>(i * r + j)] = j * l + i;
          return PInj(Pfn(l * r, l * r, std::move(tbl)));
        }
      }
      break;
    }
    case Combinator::Kind::Fold:
    case Combinator::Kind::Unfold:
      throw HasMu("denote: fold/unfold requires a mu type");
    case Combinator::Kind::Comp:
      return compose(denoteNode(c.second(), node.kids[1], gs),
                     denoteNode(c.first(), node.kids[0], gs));
    case Combinator::Kind::Sum:
      return oplus(denoteNode(c.first(), node.kids[0], gs),
                   denoteNode(c.second(), node.kids[1], gs));
    case Combinator::Kind::Prod:
      return otimes(denoteNode(c.first(), node.kids[0], gs),
                    denoteNode(c.second(), node.kids[1], gs));
    case Combinator::Kind::Trace: {
      PInj body = denoteNode(c.inner(), node.kids[0], gs);
      return trace(body, domSize, codSize);
    }
    case Combinator::Kind::Inv:
      return denoteNode(c.inner(), node.kids[0], gs).dagger();
  }
  throw InternalTypeError("denote: bad node");
}

}  // namespace

PInj denote(const Combinator& c, std::optional<CombinatorType> ascription,
            const std::map<std::string, FinSet>& groundSizes) {
  auto [ct, tree] = inferCombinatorTyped(c, std::move(ascription));
  (void)ct;
  return denoteNode(c, tree, groundSizes);
}

}  // namespace pio::pinj
