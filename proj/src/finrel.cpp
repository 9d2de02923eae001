#include "pio/finrel.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pio/interp.hpp"

namespace pio::rel {

Relation Relation::identity(int n) {
  Relation r(n, n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

Relation Relation::fromPfn(const pinj::Pfn& f) {
  Relation r(f.domSize(), f.codSize());
  for (int i = 0; i < f.domSize(); ++i)
    if (f.definedAt(i)) r.set(i, f.apply(i));
  return r;
}

Relation Relation::dagger() const {
  Relation r(cod_, dom_);
  for (int d = 0; d < dom_; ++d)
    for (int c = 0; c < cod_; ++c)
      if (at(d, c)) r.set(c, d);
  return r;
}

Relation compose(const Relation& s, const Relation& r) {
  if (r.codSize() != s.domSize()) throw ShapeMismatch("compose: cod(r) != dom(s)");
  Relation out(r.domSize(), s.codSize());
  for (int d = 0; d < r.domSize(); ++d)
    for (int m = 0; m < r.codSize(); ++m) {
      if (!r.at(d, m)) continue;
      for (int c = 0; c < s.codSize(); ++c)
        if (s.at(m, c)) out.set(d, c);
    }
  return out;
}

Relation oplus(const Relation& f, const Relation& g) {
  Relation out(f.domSize() + g.domSize(), f.codSize() + g.codSize());
  for (int d = 0; d < f.domSize(); ++d)
    for (int c = 0; c < f.codSize(); ++c)
      if (f.at(d, c)) out.set(d, c);
  for (int d = 0; d < g.domSize(); ++d)
    for (int c = 0; c < g.codSize(); ++c)
      if (g.at(d, c)) out.set(f.domSize() + d, f.codSize() + c);
  return out;
}

Relation otimes(const Relation& f, const Relation& g) {
  Relation out(f.domSize() * g.domSize(), f.codSize() * g.codSize());
  for (int d1 = 0; d1 < f.domSize(); ++d1)
    for (int c1 = 0; c1 < f.codSize(); ++c1) {
      if (!f.at(d1, c1)) continue;
      for (int d2 = 0; d2 < g.domSize(); ++d2)
        for (int c2 = 0; c2 < g.codSize(); ++c2)
          if (g.at(d2, c2))
            out.set(d1 * g.domSize() + d2, c1 * g.codSize() + c2);
    }
  return out;
}

std::string describe(const Relation& r) {
  std::ostringstream os;
  os << r.domSize() << "->" << r.codSize() << " {";
  bool first = true;
  for (int d = 0; d < r.domSize(); ++d)
    for (int c = 0; c < r.codSize(); ++c)
      if (r.at(d, c)) {
        if (!first) os << ", ";
        first = false;
        os << d << ":" << c;
      }
  os << "}";
  return os.str();
}

void FiniteGroupoid::validate() const {
  auto bad = [&](const std::string& m) { throw InvalidGroupoid(name + ": " + m); };
  if (static_cast<int>(src.size()) != morphisms ||
      static_cast<int>(tgt.size()) != morphisms ||
      static_cast<int>(inv.size()) != morphisms ||
      static_cast<int>(idOf.size()) != objects ||
      static_cast<int>(comp.size()) != morphisms)
    bad("table sizes do not match");
  for (int f = 0; f < morphisms; ++f) {
    if (src[f] < 0 || src[f] >= objects || tgt[f] < 0 || tgt[f] >= objects)
      bad("src/tgt out of range");
    if (static_cast<int>(comp[f].size()) != morphisms) bad("composition row size");
  }
  for (int a = 0; a < objects; ++a) {
    int e = idOf[a];
    if (e < 0 || e >= morphisms || src[e] != a || tgt[e] != a)
      bad("identity endpoints");
  }
  for (int f = 0; f < morphisms; ++f) {
    for (int g = 0; g < morphisms; ++g) {
      int fg = comp[f][g];
      bool composable = src[f] == tgt[g];
      if (composable != (fg >= 0)) bad("composability mismatch");
      if (fg >= 0 && (src[fg] != src[g] || tgt[fg] != tgt[f]))
        bad("composite endpoints");
    }
    if (comp[f][idOf[src[f]]] != f || comp[idOf[tgt[f]]][f] != f)
      bad("identity laws");
    int g = inv[f];
    if (src[g] != tgt[f] || tgt[g] != src[f]) bad("inverse endpoints");
    if (comp[g][f] != idOf[src[f]] || comp[f][g] != idOf[tgt[f]])
      bad("inverse laws");
  }
  for (int f = 0; f < morphisms; ++f)
    for (int g = 0; g < morphisms; ++g)
      for (int h = 0; h < morphisms; ++h) {
        // (f.g).h = f.(g.h) whenever both sides are defined
        int fg = comp[f][g];
        int gh = comp[g][h];
        if (fg >= 0 && gh >= 0) {
          if (comp[fg][h] != comp[f][gh]) bad("associativity");
        }
      }
}

RelMonoid groupoidToFrobenius(const FiniteGroupoid& g) {
  g.validate();
  RelMonoid m;
  m.name = g.name;
  m.carrier = g.morphisms;
  m.mult = Relation(g.morphisms * g.morphisms, g.morphisms);
  for (int f = 0; f < g.morphisms; ++f)
    for (int h = 0; h < g.morphisms; ++h)
      if (g.comp[f][h] >= 0) m.mult.set(f * g.morphisms + h, g.comp[f][h]);
  m.unit = Relation(1, g.morphisms);
  for (int a = 0; a < g.objects; ++a) m.unit.set(0, g.idOf[a]);
  return m;
}

CheckResult checkMonoidLaws(const RelMonoid& m) {
  int b = m.carrier;
  Relation id = Relation::identity(b);
  // associativity on B*B*B
  Relation lhs = compose(m.mult, otimes(m.mult, id));
  Relation rhs = compose(m.mult, otimes(id, m.mult));
  if (lhs != rhs) return {false, "associativity: " + describe(lhs) + " vs " + describe(rhs)};
  // unit laws; 1*B and B*1 share indices with B
  Relation lu = compose(m.mult, otimes(m.unit, id));
  if (lu != id) return {false, "left unit: " + describe(lu)};
  Relation ru = compose(m.mult, otimes(id, m.unit));
  if (ru != id) return {false, "right unit: " + describe(ru)};
  return {true, ""};
}

CheckResult checkFrobenius(const RelMonoid& m) {
  int b = m.carrier;
  Relation id = Relation::identity(b);
  Relation left = compose(otimes(m.mult, id), otimes(id, m.mult.dagger()));
  Relation mid = compose(m.mult.dagger(), m.mult);
  Relation right = compose(otimes(id, m.mult), otimes(m.mult.dagger(), id));
  if (left != mid)
    return {false, "(mult x id).(id x mult^) != mult^.mult: " + describe(left) +
                       " vs " + describe(mid)};
  if (mid != right)
    return {false, "mult^.mult != (id x mult).(mult^ x id): " + describe(mid) +
                       " vs " + describe(right)};
  return {true, ""};
}

Relation kleisliId(int xSize, const RelMonoid& m) {
  return otimes(Relation::identity(xSize), m.unit);
}

Relation kleisliCompose(const Relation& g, const Relation& f, const RelMonoid& m) {
  int b = m.carrier;
  if (g.codSize() % b != 0) throw ShapeMismatch("kleisli: cod(g) not a multiple of |B|");
  int z = g.codSize() / b;
  Relation muZ = otimes(Relation::identity(z), m.mult);
  return compose(muZ, compose(otimes(g, Relation::identity(b)), f));
}

Relation kleisliDagger(const Relation& f, const RelMonoid& m) {
  int b = m.carrier;
  if (f.codSize() % b != 0) throw ShapeMismatch("kleisliDagger: cod not a multiple of |B|");
  int y = f.codSize() / b;
  Relation etaY = kleisliId(y, m);
  Relation muDagY = otimes(Relation::identity(y), m.mult).dagger();
  Relation tfDag = otimes(f.dagger(), Relation::identity(b));
  return compose(tfDag, compose(muDagY, etaY));
}

CheckResult checkEMLaws(const RelAlgebra& alg) {
  int a = alg.carrier;
  int b = alg.monoid.carrier;
  Relation idA = Relation::identity(a);
  Relation unitLaw = compose(alg.action, kleisliId(a, alg.monoid));
  if (unitLaw != idA) return {false, "unit law: " + describe(unitLaw)};
  Relation viaMu = compose(alg.action, otimes(idA, alg.monoid.mult));
  Relation viaTa = compose(alg.action, otimes(alg.action, Relation::identity(b)));
  if (viaMu != viaTa)
    return {false, "associativity: " + describe(viaMu) + " vs " + describe(viaTa)};
  return {true, ""};
}

CheckResult checkFEM(const RelAlgebra& alg) {
  int a = alg.carrier;
  int b = alg.monoid.carrier;
  Relation muDagA = otimes(Relation::identity(a), alg.monoid.mult).dagger();
  Relation s = compose(otimes(alg.action, Relation::identity(b)), muDagA);
  if (s != s.dagger())
    return {false, "T(a).mu^ is not self-adjoint: " + describe(s)};
  return {true, ""};
}

RelAlgebra freeAlgebra(const RelMonoid& m, int xSize) {
  RelAlgebra alg;
  alg.name = m.name + "-free-" + std::to_string(xSize);
  alg.monoid = m;
  alg.carrier = xSize * m.carrier;
  alg.action = otimes(Relation::identity(xSize), m.mult);
  return alg;
}

std::optional<RelAlgebra> searchEMnotFEM(const RelMonoid& m, int maxCarrier) {
  for (int a = 1; a <= maxCarrier; ++a) {
    int bits = a * m.carrier * a;
    if (bits > 20) throw ShapeMismatch("searchEMnotFEM: search space too large");
    std::int64_t total = 1ll << bits;
    for (std::int64_t code = 0; code < total; ++code) {
      RelAlgebra alg;
      alg.monoid = m;
      alg.carrier = a;
      alg.action = Relation(a * m.carrier, a);
      std::int64_t c = code;
      for (int d = 0; d < a * m.carrier; ++d)
        for (int t = 0; t < a; ++t) {
          if (c & 1) alg.action.set(d, t);
          c >>= 1;
        }
      if (!checkEMLaws(alg).ok) continue;
      if (checkFEM(alg).ok) continue;
      alg.name = m.name + "-em-not-fem";
      return alg;
    }
  }
  return std::nullopt;
}

// ---- corpus ----

namespace {

FiniteGroupoid oneObjectGroupoid(const std::string& name,
                                 const std::vector<std::vector<int>>& table,
                                 int identity) {
  FiniteGroupoid g;
  g.name = name;
  g.objects = 1;
  int n = static_cast<int>(table.size());
  g.morphisms = n;
  g.src.assign(static_cast<size_t>(n), 0);
  g.tgt.assign(static_cast<size_t>(n), 0);
  g.idOf = {identity};
  g.comp = table;
  g.inv.assign(static_cast<size_t>(n), -1);
  for (int f = 0; f < n; ++f)
    for (int h = 0; h < n; ++h)
      if (table[static_cast<size_t>(f)][static_cast<size_t>(h)] == identity &&
          table[static_cast<size_t>(h)][static_cast<size_t>(f)] == identity)
        g.inv[static_cast<size_t>(f)] = h;
  return g;
}

std::vector<std::vector<int>> cyclicTable(int n) {
  std::vector<std::vector<int>> t(static_cast<size_t>(n),
                                  std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  return t;
}

std::vector<std::vector<int>> kleinTable() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = i ^ j;
  return t;
}

std::vector<std::vector<int>> s3Table() {
  // permutations of {0,1,2} in a fixed order
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto mul = [&](int i, int j) {
    std::array<int, 3> r;
    for (int k = 0; k < 3; ++k)
      r[static_cast<size_t>(k)] =
          perms[static_cast<size_t>(i)][static_cast<size_t>(
              perms[static_cast<size_t>(j)][static_cast<size_t>(k)])];
    for (size_t k = 0; k < perms.size(); ++k)
      if (perms[k] == r) return static_cast<int>(k);
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = mul(i, j);
  return t;
}

FiniteGroupoid pairGroupoid() {
  // objects 0,1; morphisms: id0, id1, a:0->1, a^:1->0
  FiniteGroupoid g;
  g.name = "pair2";
  g.objects = 2;
  g.morphisms = 4;
  g.src = {0, 1, 0, 1};
  g.tgt = {0, 1, 1, 0};
  g.idOf = {0, 1};
  g.inv = {0, 1, 3, 2};
  g.comp.assign(4, std::vector<int>(4, -1));
  auto def = [&](int f, int h, int fh) { g.comp[static_cast<size_t>(f)][static_cast<size_t>(h)] = fh; };
  def(0, 0, 0);
  def(1, 1, 1);
  def(2, 0, 2);  // a . id0
  def(1, 2, 2);  // id1 . a
  def(3, 1, 3);
  def(0, 3, 3);
  def(3, 2, 0);  // a^ . a = id0
  def(2, 3, 1);  // a . a^ = id1
  return g;
}

FiniteGroupoid disjointUnion(const std::string& name, const FiniteGroupoid& g1,
                             const FiniteGroupoid& g2) {
  FiniteGroupoid g;
  g.name = name;
  g.objects = g1.objects + g2.objects;
  g.morphisms = g1.morphisms + g2.morphisms;
  for (int f = 0; f < g1.morphisms; ++f) {
    g.src.push_back(g1.src[static_cast<size_t>(f)]);
    g.tgt.push_back(g1.tgt[static_cast<size_t>(f)]);
    g.inv.push_back(g1.inv[static_cast<size_t>(f)]);
  }
  for (int f = 0; f < g2.morphisms; ++f) {
    g.src.push_back(g1.objects + g2.src[static_cast<size_t>(f)]);
    g.tgt.push_back(g1.objects + g2.tgt[static_cast<size_t>(f)]);
    g.inv.push_back(g1.morphisms + g2.inv[static_cast<size_t>(f)]);
  }
  for (int a = 0; a < g1.objects; ++a) g.idOf.push_back(g1.idOf[static_cast<size_t>(a)]);
  for (int a = 0; a < g2.objects; ++a)
    g.idOf.push_back(g1.morphisms + g2.idOf[static_cast<size_t>(a)]);
  g.comp.assign(static_cast<size_t>(g.morphisms),
                std::vector<int>(static_cast<size_t>(g.morphisms), -1));
  for (int f = 0; f < g1.morphisms; ++f)
    for (int h = 0; h < g1.morphisms; ++h)
      g.comp[static_cast<size_t>(f)][static_cast<size_t>(h)] =
          g1.comp[static_cast<size_t>(f)][static_cast<size_t>(h)];
  for (int f = 0; f < g2.morphisms; ++f)
    for (int h = 0; h < g2.morphisms; ++h) {
      int v = g2.comp[static_cast<size_t>(f)][static_cast<size_t>(h)];
      g.comp[static_cast<size_t>(g1.morphisms + f)][static_cast<size_t>(g1.morphisms + h)] =
          v < 0 ? -1 : g1.morphisms + v;
    }
  return g;
}

}  // namespace

std::vector<FiniteGroupoid> groupoidCorpus() {
  FiniteGroupoid c1 = oneObjectGroupoid("c1", cyclicTable(1), 0);
  FiniteGroupoid c2 = oneObjectGroupoid("c2", cyclicTable(2), 0);
  FiniteGroupoid c3 = oneObjectGroupoid("c3", cyclicTable(3), 0);
  FiniteGroupoid c4 = oneObjectGroupoid("c4", cyclicTable(4), 0);
  FiniteGroupoid c5 = oneObjectGroupoid("c5", cyclicTable(5), 0);
  FiniteGroupoid c6 = oneObjectGroupoid("c6", cyclicTable(6), 0);
  FiniteGroupoid v4 = oneObjectGroupoid("v4", kleinTable(), 0);
  FiniteGroupoid s3 = oneObjectGroupoid("s3", s3Table(), 0);
  FiniteGroupoid pair = pairGroupoid();

  std::vector<FiniteGroupoid> out = {c1, c2, c3, c4, c5, c6, v4, s3, pair};
  auto add = [&](const std::string& name, const FiniteGroupoid& a,
                 const FiniteGroupoid& b) { out.push_back(disjointUnion(name, a, b)); };
  // two one-object components, at most 6 morphisms total
  add("c1+c1", c1, c1);
  add("c1+c2", c1, c2);
  add("c1+c3", c1, c3);
  add("c1+c4", c1, c4);
  add("c1+v4", c1, v4);
  add("c1+c5", c1, c5);
  add("c2+c2", c2, c2);
  add("c2+c3", c2, c3);
  add("c2+c4", c2, c4);
  add("c2+v4", c2, v4);
  add("c3+c3", c3, c3);
  // pair groupoid plus a one-object component
  add("pair2+c1", pair, c1);
  add("pair2+c2", pair, c2);
  // three one-object components
  add("c1+c1+c1", disjointUnion("", c1, c1), c1);
  add("c1+c1+c2", disjointUnion("", c1, c1), c2);
  add("c1+c1+c3", disjointUnion("", c1, c1), c3);
  add("c1+c1+c4", disjointUnion("", c1, c1), c4);
  add("c1+c1+v4", disjointUnion("", c1, c1), v4);
  add("c1+c2+c2", disjointUnion("", c1, c2), c2);
  add("c1+c2+c3", disjointUnion("", c1, c2), c3);
  add("c2+c2+c2", disjointUnion("", c2, c2), c2);
  return out;
}

RelMonoid meetMonoid() {
  RelMonoid m;
  m.name = "meet2";
  m.carrier = 2;
  m.mult = Relation(4, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m.mult.set(a * 2 + b, std::min(a, b));
  m.unit = Relation(1, 2);
  m.unit.set(0, 1);
  return m;
}

RelMonoid constFirstMonoid() {
  RelMonoid m;
  m.name = "constfirst2";
  m.carrier = 2;
  m.mult = Relation(4, 2);
  for (int d = 0; d < 4; ++d) m.mult.set(d, 0);
  m.unit = Relation(1, 2);
  m.unit.set(0, 0);
  return m;
}

RelAlgebra z2SwapActionAlgebra() {
  FiniteGroupoid z2 = oneObjectGroupoid("c2", cyclicTable(2), 0);
  RelAlgebra alg;
  alg.name = "z2-swap-action";
  alg.monoid = groupoidToFrobenius(z2);
  alg.carrier = 4;
  alg.action = Relation(8, 4);
  auto swap = [](int x) { return x ^ 1; };  // 0<->1, 2<->3
  for (int x = 0; x < 4; ++x) {
    alg.action.set(x * 2 + 0, x);        // identity acts trivially
    alg.action.set(x * 2 + 1, swap(x));  // the generator swaps
  }
  return alg;
}

RelAlgebra discreteActionAlgebra() {
  FiniteGroupoid c1 = oneObjectGroupoid("c1", cyclicTable(1), 0);
  FiniteGroupoid disc = disjointUnion("c1+c1", c1, c1);
  RelAlgebra alg;
  alg.name = "discrete-action";
  alg.monoid = groupoidToFrobenius(disc);
  alg.carrier = 3;  // {0,1} over the first object, {2} over the second
  alg.action = Relation(6, 3);
  for (int x = 0; x < 3; ++x) {
    int object = x < 2 ? 0 : 1;
    alg.action.set(x * 2 + object, x);  // id of the owning object fixes x
  }
  return alg;
}

RelAlgebra pinnedNonFemAlgebra() {
  // Discovered by searchEMnotFEM(meetMonoid(), 2): the free meet-monoid
  // algebra on one generator, action min : {0,1} x B -> {0,1}.
  RelAlgebra alg;
  alg.name = "meet2-em-not-fem";
  alg.monoid = meetMonoid();
  alg.carrier = 2;
  alg.action = Relation(4, 2);
  for (int x = 0; x < 2; ++x)
    for (int b = 0; b < 2; ++b) alg.action.set(x * 2 + b, std::min(x, b));
  return alg;
}

// ---- chains ----

namespace {

pinj::Pfn composePfnChain(const std::vector<pinj::Pfn>& maps, int from, int to,
                          int size, bool forward) {
  // forward: maps[from] ; ... ; maps[to-1]; else maps[to-1]^T direction
  pinj::Pfn acc = pinj::Pfn::identity(size);
  if (forward) {
    for (int k = from; k < to; ++k) acc = pinj::compose(maps[static_cast<size_t>(k)], acc);
  } else {
    for (int k = from - 1; k >= to; --k)
      acc = pinj::compose(maps[static_cast<size_t>(k)], acc);
  }
  return acc;
}

}  // namespace

AmbilimitReport checkAmbilimitLaws(const ChainData& c) {
  AmbilimitReport rep;
  int n = static_cast<int>(c.sizes.size());
  auto item = [&](const std::string& name) -> AmbilimitReport::Item& {
    rep.items.push_back({name, true, ""});
    return rep.items.back();
  };
  auto fail = [](AmbilimitReport::Item& it, const std::string& why) {
    if (it.passed) {
      it.passed = false;
      it.counterexample = why;
    }
  };

  auto eNM = [&](int a, int b) {  // D(a) -> D(b), a <= b
    return composePfnChain(c.e, a, b, c.sizes[static_cast<size_t>(a)], true);
  };
  auto qNM = [&](int a, int b) {  // D(a) -> D(b), a > b
    return composePfnChain(c.q, a, b, c.sizes[static_cast<size_t>(a)], false);
  };

  {
    auto& it = item("split premise q_n e_n = id");
    for (int k = 0; k + 1 < n; ++k) {
      pinj::Pfn comp = pinj::compose(c.q[static_cast<size_t>(k)], c.e[static_cast<size_t>(k)]);
      if (comp != pinj::Pfn::identity(c.sizes[static_cast<size_t>(k)]))
        fail(it, "at n=" + std::to_string(k) + ": " + pinj::describe(comp));
    }
  }
  {
    auto& it = item("cone and cocone commutation");
    for (int k = 0; k + 1 < n; ++k) {
      pinj::Pfn cone = pinj::compose(c.q[static_cast<size_t>(k)], c.p[static_cast<size_t>(k) + 1]);
      if (cone != c.p[static_cast<size_t>(k)])
        fail(it, "q_" + std::to_string(k) + " p_" + std::to_string(k + 1) + " != p_" +
                     std::to_string(k));
      pinj::Pfn cocone = pinj::compose(c.i[static_cast<size_t>(k) + 1], c.e[static_cast<size_t>(k)]);
      if (cocone != c.i[static_cast<size_t>(k)])
        fail(it, "i_" + std::to_string(k + 1) + " e_" + std::to_string(k) + " != i_" +
                     std::to_string(k));
    }
  }
  {
    auto& it = item("normalization i p i = i and p i p = p");
    for (int k = 0; k < n; ++k) {
      const auto& pk = c.p[static_cast<size_t>(k)];
      const auto& ik = c.i[static_cast<size_t>(k)];
      if (pinj::compose(ik, pinj::compose(pk, ik)) != ik)
        fail(it, "i p i != i at n=" + std::to_string(k));
      if (pinj::compose(pk, pinj::compose(ik, pk)) != pk)
        fail(it, "p i p != p at n=" + std::to_string(k));
    }
  }
  {
    auto& it = item("independence: induced idempotents commute");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        pinj::Pfn ea = pinj::compose(c.i[static_cast<size_t>(a)], c.p[static_cast<size_t>(a)]);
        pinj::Pfn eb = pinj::compose(c.i[static_cast<size_t>(b)], c.p[static_cast<size_t>(b)]);
        if (pinj::compose(ea, eb) != pinj::compose(eb, ea))
          fail(it, "at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
  }
  {
    auto& it = item("connecting maps p_m i_n = e_{n,m} / q_{n,m}");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        pinj::Pfn got = pinj::compose(c.p[static_cast<size_t>(b)], c.i[static_cast<size_t>(a)]);
        pinj::Pfn want = a <= b ? eNM(a, b) : qNM(a, b);
        if (got != want)
          fail(it, "at (n,m)=(" + std::to_string(a) + "," + std::to_string(b) +
                       "): got " + pinj::describe(got) + " want " + pinj::describe(want));
      }
  }
  {
    auto& it = item("canonical map D(N) <-> apex is a bijection");
    const auto& iN = c.i[static_cast<size_t>(n - 1)];
    const auto& pN = c.p[static_cast<size_t>(n - 1)];
    if (!iN.total() || !iN.injective())
      fail(it, "i_N is not a total injection: " + pinj::describe(iN));
    if (pinj::compose(pN, iN) != pinj::Pfn::identity(c.sizes[static_cast<size_t>(n - 1)]))
      fail(it, "p_N i_N != id");
    if (pinj::compose(iN, pN) != pinj::Pfn::identity(c.apexSize))
      fail(it, "i_N p_N != id on the apex: " + pinj::describe(pinj::compose(iN, pN)));
  }
  return rep;
}

ChainData correctSplitChain(int n) {
  ChainData c;
  c.name = "pfn-correct-split";
  for (int k = 0; k <= n; ++k) c.sizes.push_back(k);
  for (int k = 0; k < n; ++k) {
    std::vector<int> e(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) e[static_cast<size_t>(j)] = j;
    c.e.emplace_back(k, k + 1, e);
    std::vector<int> q(static_cast<size_t>(k + 1), -1);
    for (int j = 0; j < k; ++j) q[static_cast<size_t>(j)] = j;
    c.q.emplace_back(k + 1, k, q);
  }
  c.apexSize = n;
  for (int k = 0; k <= n; ++k) {
    std::vector<int> p(static_cast<size_t>(n), -1);
    for (int j = 0; j < k; ++j) p[static_cast<size_t>(j)] = j;
    c.p.emplace_back(n, k, p);
    std::vector<int> i(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) i[static_cast<size_t>(j)] = j;
    c.i.emplace_back(k, n, i);
  }
  return c;
}

ChainData minSplitChain(int n) {
  // apex is {1..n} plus a top element, the truncation of N u {inf}
  ChainData c;
  c.name = "pfn-min-split";
  for (int k = 0; k <= n; ++k) c.sizes.push_back(k);
  for (int k = 0; k < n; ++k) {
    std::vector<int> e(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) e[static_cast<size_t>(j)] = j;
    c.e.emplace_back(k, k + 1, e);
    std::vector<int> q(static_cast<size_t>(k + 1), -1);
    for (int j = 0; j <= k; ++j) q[static_cast<size_t>(j)] = k == 0 ? -1 : std::min(j, k - 1);
    c.q.emplace_back(k + 1, k, q);
  }
  c.apexSize = n + 1;  // index n is the top element
  for (int k = 0; k <= n; ++k) {
    std::vector<int> p(static_cast<size_t>(n + 1), -1);
    for (int j = 0; j <= n; ++j) p[static_cast<size_t>(j)] = k == 0 ? -1 : std::min(j, k - 1);
    c.p.emplace_back(n + 1, k, p);
    std::vector<int> i(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) i[static_cast<size_t>(j)] = j;
    c.i.emplace_back(k, n + 1, i);
  }
  return c;
}

// ---- polynomial functors ----

namespace {

void requirePoly(const Type& body, const std::string& var) {
  switch (body.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      requirePoly(body.left(), var);
      requirePoly(body.right(), var);
      return;
    case Type::Kind::Var:
      if (body.name() != var)
        throw NotPolynomial("free variable '" + body.name() + "' in functor body");
      return;
    default:
      throw NotPolynomial("functor body must be built from 0, 1, +, * and the variable");
  }
}

int sizePoly(const Type& body, const std::string& var, int n) {
  switch (body.kind()) {
    case Type::Kind::Zero: return 0;
    case Type::Kind::One: return 1;
    case Type::Kind::Sum:
      return sizePoly(body.left(), var, n) + sizePoly(body.right(), var, n);
    case Type::Kind::Prod:
      return sizePoly(body.left(), var, n) * sizePoly(body.right(), var, n);
    case Type::Kind::Var: return n;
    default: throw NotPolynomial("bad functor body");
  }
}

pinj::Pfn applyPoly(const Type& body, const std::string& var, const pinj::Pfn& h) {
  switch (body.kind()) {
    case Type::Kind::Zero: return pinj::Pfn(0, 0, {});
    case Type::Kind::One: return pinj::Pfn::identity(1);
    case Type::Kind::Sum:
      return pinj::oplus(applyPoly(body.left(), var, h), applyPoly(body.right(), var, h));
    case Type::Kind::Prod:
      return pinj::otimes(applyPoly(body.left(), var, h), applyPoly(body.right(), var, h));
    case Type::Kind::Var: return h;
    default: throw NotPolynomial("bad functor body");
  }
}

int idxBody(const PolyFunctor& f, const Type& body, int stage, const Value& v);

}  // namespace

int stageIndexOfValue(const PolyFunctor& f, int stage, const Value& v) {
  if (stage <= 0 || v.kind() != Value::Kind::Fold)
    throw InternalTypeError("stageIndexOfValue: not a stage value");
  return idxBody(f, f.body, stage - 1, v.arg());
}

namespace {

int idxBody(const PolyFunctor& f, const Type& body, int stage, const Value& v) {
  switch (body.kind()) {
    case Type::Kind::One:
      if (v.kind() == Value::Kind::Unit) return 0;
      break;
    case Type::Kind::Sum:
      if (v.kind() == Value::Kind::InL) return idxBody(f, body.left(), stage, v.arg());
      if (v.kind() == Value::Kind::InR)
        return sizePoly(body.left(), f.var, stage) + idxBody(f, body.right(), stage, v.arg());
      break;
    case Type::Kind::Prod:
      if (v.kind() == Value::Kind::Pair)
        return idxBody(f, body.left(), stage, v.first()) *
                   sizePoly(body.right(), f.var, stage) +
               idxBody(f, body.right(), stage, v.second());
      break;
    case Type::Kind::Var:
      return stageIndexOfValue(f, stage, v);
    default:
      break;
  }
  throw InternalTypeError("stage index: value does not match functor body");
}

}  // namespace

AdamekApproximant adamekApproximant(const PolyFunctor& f, int stages) {
  requirePoly(f.body, f.var);
  AdamekApproximant out;
  out.sizes.push_back(0);
  for (int k = 1; k < stages; ++k)
    out.sizes.push_back(sizePoly(f.body, f.var, out.sizes.back()));
  if (stages >= 2) {
    out.embeddings.emplace_back(0, out.sizes[1], std::vector<int>{});
    out.projections.emplace_back(out.sizes[1], 0,
                                 std::vector<int>(static_cast<size_t>(out.sizes[1]), -1));
    for (int k = 1; k + 1 < stages; ++k) {
      out.embeddings.push_back(applyPoly(f.body, f.var, out.embeddings.back()));
      out.projections.push_back(applyPoly(f.body, f.var, out.projections.back()));
    }
  }
  return out;
}

ChainData adamekChain(const PolyFunctor& f, int stages) {
  AdamekApproximant a = adamekApproximant(f, stages);
  ChainData c;
  c.name = "adamek";
  c.sizes = a.sizes;
  c.e = a.embeddings;
  c.q = a.projections;
  int n = stages - 1;
  c.apexSize = a.sizes[static_cast<size_t>(n)];
  for (int k = 0; k < stages; ++k) {
    c.i.push_back(composePfnChain(c.e, k, n, c.sizes[static_cast<size_t>(k)], true));
    c.p.push_back(composePfnChain(c.q, n, k, c.apexSize, false));
  }
  return c;
}

CheckResult checkInitialAlgebraApprox(const PolyFunctor& f, int stages) {
  AdamekApproximant a = adamekApproximant(f, stages);
  for (size_t k = 0; k + 1 < a.sizes.size(); ++k) {
    const auto& e = a.embeddings[k];
    if (!e.total() || !e.injective())
      return {false, "embedding " + std::to_string(k) + " is not a split monic"};
    if (pinj::compose(a.projections[k], e) !=
        pinj::Pfn::identity(a.sizes[k]))
      return {false, "projection does not split embedding " + std::to_string(k)};
  }
  Type mu = Type::mu(f.var, f.body);
  for (int k = 1; k < stages; ++k) {
    std::vector<Value> vals = unrollMuApproximant(mu, k);
    if (static_cast<int>(vals.size()) != a.sizes[static_cast<size_t>(k)])
      return {false, "stage " + std::to_string(k) + " has " +
                         std::to_string(a.sizes[static_cast<size_t>(k)]) +
                         " elements but " + std::to_string(vals.size()) +
                         " fold-values"};
    std::vector<char> hit(static_cast<size_t>(a.sizes[static_cast<size_t>(k)]), 0);
    for (const auto& v : vals) {
      int idx = stageIndexOfValue(f, k, v);
      if (idx < 0 || idx >= a.sizes[static_cast<size_t>(k)] || hit[static_cast<size_t>(idx)])
        return {false, "stage indexing is not a bijection at stage " + std::to_string(k)};
      hit[static_cast<size_t>(idx)] = 1;
    }
    // levelwise stabilization: the embedding agrees with indexing one
    // stage up, so the algebra map restricts to a bijection on the image
    if (k >= 2) {
      for (const auto& v : unrollMuApproximant(mu, k - 1)) {
        int lo = stageIndexOfValue(f, k - 1, v);
        int hi = stageIndexOfValue(f, k, v);
        if (a.embeddings[static_cast<size_t>(k - 1)].apply(lo) != hi)
          return {false, "embedding disagrees with stage indexing at stage " +
                             std::to_string(k)};
      }
    }
  }
  return {true, ""};
}

// ---- corpus files ----

namespace {

struct WordStream {
  std::vector<std::string> words;
  size_t pos = 0;

  explicit WordStream(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ws(line);
      std::string w;
      while (ws >> w) words.push_back(w);
    }
  }

  std::string next(const char* what) {
    if (pos >= words.size())
      throw ShapeMismatch(std::string("corpus file ended while reading ") + what);
    return words[pos++];
  }
  int nextInt(const char* what) {
    std::string w = next(what);
    try {
      return std::stoi(w);
    } catch (...) {
      throw ShapeMismatch(std::string("expected a number for ") + what + ", got '" + w + "'");
    }
  }
  int nextEntry(const char* what) {  // '-' becomes -1
    std::string w = next(what);
    if (w == "-") return -1;
    try {
      return std::stoi(w);
    } catch (...) {
      throw ShapeMismatch(std::string("expected an entry for ") + what + ", got '" + w + "'");
    }
  }
  void expect(const char* word) {
    std::string w = next(word);
    if (w != word)
      throw ShapeMismatch(std::string("expected '") + word + "', got '" + w + "'");
  }
};

pinj::Pfn readPfn(WordStream& ws, int dom, int cod, const char* what) {
  std::vector<int> tbl(static_cast<size_t>(dom));
  for (int i = 0; i < dom; ++i) {
    int v = ws.nextEntry(what);
    if (v >= cod) throw ShapeMismatch(std::string(what) + ": entry out of range");
    tbl[static_cast<size_t>(i)] = v;
  }
  return pinj::Pfn(dom, cod, tbl);
}

void writePfn(std::ostringstream& os, const pinj::Pfn& f) {
  for (int i = 0; i < f.domSize(); ++i) {
    os << ' ';
    if (f.definedAt(i))
      os << f.apply(i);
    else
      os << '-';
  }
}

}  // namespace

FiniteGroupoid parseGroupoidFile(const std::string& text) {
  WordStream ws(text);
  ws.expect("groupoid");
  FiniteGroupoid g;
  g.name = ws.next("name");
  ws.expect("objects");
  g.objects = ws.nextInt("objects");
  ws.expect("morphisms");
  g.morphisms = ws.nextInt("morphisms");
  ws.expect("src");
  for (int k = 0; k < g.morphisms; ++k) g.src.push_back(ws.nextInt("src"));
  ws.expect("tgt");
  for (int k = 0; k < g.morphisms; ++k) g.tgt.push_back(ws.nextInt("tgt"));
  ws.expect("id");
  for (int k = 0; k < g.objects; ++k) g.idOf.push_back(ws.nextInt("id"));
  ws.expect("inv");
  for (int k = 0; k < g.morphisms; ++k) g.inv.push_back(ws.nextInt("inv"));
  ws.expect("comp");
  g.comp.assign(static_cast<size_t>(g.morphisms),
                std::vector<int>(static_cast<size_t>(g.morphisms), -1));
  for (int f = 0; f < g.morphisms; ++f)
    for (int h = 0; h < g.morphisms; ++h)
      g.comp[static_cast<size_t>(f)][static_cast<size_t>(h)] = ws.nextEntry("comp");
  g.validate();
  return g;
}

std::string printGroupoidFile(const FiniteGroupoid& g) {
  std::ostringstream os;
  os << "groupoid " << g.name << "\n";
  os << "objects " << g.objects << "\nmorphisms " << g.morphisms << "\n";
  os << "src";
  for (int v : g.src) os << ' ' << v;
  os << "\ntgt";
  for (int v : g.tgt) os << ' ' << v;
  os << "\nid";
  for (int v : g.idOf) os << ' ' << v;
  os << "\ninv";
  for (int v : g.inv) os << ' ' << v;
  os << "\ncomp\n";
  for (const auto& row : g.comp) {
    bool first = true;
    for (int v : row) {
      if (!first) os << ' ';
      first = false;
      if (v < 0)
        os << '-';
      else
        os << v;
    }
    os << "\n";
  }
  return os.str();
}

RelMonoid parseMonoidFile(const std::string& text) {
  WordStream ws(text);
  ws.expect("monoid");
  RelMonoid m;
  m.name = ws.next("name");
  ws.expect("carrier");
  m.carrier = ws.nextInt("carrier");
  ws.expect("unit");
  m.unit = Relation(1, m.carrier);
  {
    int count = ws.nextInt("unit count");
    for (int k = 0; k < count; ++k) m.unit.set(0, ws.nextInt("unit element"));
  }
  ws.expect("mult");
  m.mult = Relation(m.carrier * m.carrier, m.carrier);
  for (int a = 0; a < m.carrier; ++a)
    for (int b = 0; b < m.carrier; ++b) {
      std::string cell = ws.next("mult cell");
      if (cell == "-") continue;
      std::istringstream parts(cell);
      std::string piece;
      while (std::getline(parts, piece, ','))
        m.mult.set(a * m.carrier + b, std::stoi(piece));
    }
  return m;
}

std::string printMonoidFile(const RelMonoid& m) {
  std::ostringstream os;
  os << "monoid " << m.name << "\ncarrier " << m.carrier << "\nunit";
  std::vector<int> units;
  for (int v = 0; v < m.carrier; ++v)
    if (m.unit.at(0, v)) units.push_back(v);
  os << ' ' << units.size();
  for (int v : units) os << ' ' << v;
  os << "\nmult\n";
  for (int a = 0; a < m.carrier; ++a) {
    for (int b = 0; b < m.carrier; ++b) {
      if (b) os << ' ';
      std::string cell;
      for (int v = 0; v < m.carrier; ++v)
        if (m.mult.at(a * m.carrier + b, v)) {
          if (!cell.empty()) cell += ',';
          cell += std::to_string(v);
        }
      os << (cell.empty() ? "-" : cell);
    }
    os << "\n";
  }
  return os.str();
}

ChainData parseChainFile(const std::string& text) {
  WordStream ws(text);
  ws.expect("chain");
  ChainData c;
  c.name = ws.next("name");
  ws.expect("objects");
  int n = ws.nextInt("objects");
  ws.expect("sizes");
  for (int k = 0; k < n; ++k) c.sizes.push_back(ws.nextInt("sizes"));
  ws.expect("apex");
  c.apexSize = ws.nextInt("apex");
  for (int k = 0; k + 1 < n; ++k) {
    ws.expect("e");
    c.e.push_back(readPfn(ws, c.sizes[static_cast<size_t>(k)],
                          c.sizes[static_cast<size_t>(k) + 1], "e"));
  }
  for (int k = 0; k + 1 < n; ++k) {
    ws.expect("q");
    c.q.push_back(readPfn(ws, c.sizes[static_cast<size_t>(k) + 1],
                          c.sizes[static_cast<size_t>(k)], "q"));
  }
  for (int k = 0; k < n; ++k) {
    ws.expect("p");
    c.p.push_back(readPfn(ws, c.apexSize, c.sizes[static_cast<size_t>(k)], "p"));
  }
  for (int k = 0; k < n; ++k) {
    ws.expect("i");
    c.i.push_back(readPfn(ws, c.sizes[static_cast<size_t>(k)], c.apexSize, "i"));
  }
  return c;
}

std::string printChainFile(const ChainData& c) {
  std::ostringstream os;
  os << "chain " << c.name << "\nobjects " << c.sizes.size() << "\nsizes";
  for (int s : c.sizes) os << ' ' << s;
  os << "\napex " << c.apexSize << "\n";
  for (const auto& f : c.e) {
    os << "e";
    writePfn(os, f);
    os << "\n";
  }
  for (const auto& f : c.q) {
    os << "q";
    writePfn(os, f);
    os << "\n";
  }
  for (const auto& f : c.p) {
    os << "p";
    writePfn(os, f);
    os << "\n";
  }
  for (const auto& f : c.i) {
    os << "i";
    writePfn(os, f);
    os << "\n";
  }
  return os.str();
}

}  // namespace pio::rel
