#include "pio/typecheck.hpp"

#include <sstream>

namespace pio {

bool checkValue(const Value& v, const Type& a) {
  if (!isClosed(a)) throw IllFormedType("checkValue: type is not closed: " + printType(a));
  switch (a.kind()) {
    case Type::Kind::Zero:
      return false;
    case Type::Kind::One:
      return v.kind() == Value::Kind::Unit;
    case Type::Kind::Sum:
      if (v.kind() == Value::Kind::InL) return checkValue(v.arg(), a.left());
      if (v.kind() == Value::Kind::InR) return checkValue(v.arg(), a.right());
      return false;
    case Type::Kind::Prod:
      return v.kind() == Value::Kind::Pair && checkValue(v.first(), a.left()) &&
             checkValue(v.second(), a.right());
    case Type::Kind::Mu:
      return v.kind() == Value::Kind::Fold && checkValue(v.arg(), unrollMu(a));
    case Type::Kind::Var:
    case Type::Kind::Meta:
      throw IllFormedType("checkValue: unexpected " + printType(a));
  }
  return false;
}

bool checkValue(const Value& v, const Type& a, const Assignment& s) {
  Type t = a;
  for (const auto& [name, ty] : s) t = substitute(t, name, ty);
  return checkValue(v, t);
}

namespace {

struct MetaGen {
  int next = 0;
  Type fresh() { return Type::meta(next++); }
};

Type resolveRoot(Type t, const Subst& s) {
  while (t.kind() == Type::Kind::Meta) {
    auto it = s.find(t.metaId());
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(int id, const Type& t, const Subst& s) {
  Type r = resolveRoot(t, s);
  switch (r.kind()) {
    case Type::Kind::Meta:
      return r.metaId() == id;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      return occurs(id, r.left(), s) || occurs(id, r.right(), s);
    case Type::Kind::Mu:
      return occurs(id, r.body(), s);
    default:
      return false;
  }
}

void unify(const Type& ta, const Type& tb, Subst& s) {
  Type a = resolveRoot(ta, s);
  Type b = resolveRoot(tb, s);
  if (a.kind() == Type::Kind::Meta && b.kind() == Type::Kind::Meta &&
      a.metaId() == b.metaId())
    return;
  if (a.kind() == Type::Kind::Meta) {
    if (occurs(a.metaId(), b, s))
      throw OccursCheck("?" + std::to_string(a.metaId()), printType(zonk(b, s)));
    s.emplace(a.metaId(), b);
    return;
  }
  if (b.kind() == Type::Kind::Meta) {
    if (occurs(b.metaId(), a, s))
      throw OccursCheck("?" + std::to_string(b.metaId()), printType(zonk(a, s)));
    s.emplace(b.metaId(), a);
    return;
  }
  if (a.kind() != b.kind())
    throw UnificationFailure(printType(zonk(a, s)), printType(zonk(b, s)));
  switch (a.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return;
    case Type::Kind::Var:
      if (a.name() != b.name())
        throw UnificationFailure(printType(a), printType(b));
      return;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      unify(a.left(), b.left(), s);
      unify(a.right(), b.right(), s);
      return;
    case Type::Kind::Mu: {
      // mu types are compared up to alpha only; bodies here are ground
      Type renamed = a.name() == b.name()
                         ? b.body()
                         : substitute(b.body(), b.name(), Type::var(a.name()));
      unify(a.body(), renamed, s);
      return;
    }
    case Type::Kind::Meta:
      return;  // handled above
  }
}

struct ConstraintGen {
  MetaGen metas;
  std::vector<Constraint> constraints;

  void eq(Type a, Type b) { constraints.push_back({std::move(a), std::move(b)}); }

  std::pair<Type, Type> schema(Prim p) {
    Type a = metas.fresh(), b = metas.fresh(), c = metas.fresh();
    switch (p) {
      case Prim::Id:
        return {a, a};
      case Prim::AssocLPlus:
        return {Type::sum(a, Type::sum(b, c)), Type::sum(Type::sum(a, b), c)};
      case Prim::AssocRPlus:
        return {Type::sum(Type::sum(a, b), c), Type::sum(a, Type::sum(b, c))};
      case Prim::UnitLPlus:
        return {Type::sum(Type::zero(), a), a};
      case Prim::UnitRPlus:
        return {a, Type::sum(Type::zero(), a)};
      case Prim::SwapPlus:
        return {Type::sum(a, b), Type::sum(b, a)};
      case Prim::AssocLTimes:
        return {Type::prod(a, Type::prod(b, c)), Type::prod(Type::prod(a, b), c)};
      case Prim::AssocRTimes:
        return {Type::prod(Type::prod(a, b), c), Type::prod(a, Type::prod(b, c))};
      case Prim::UnitLTimes:
        return {Type::prod(Type::one(), a), a};
      case Prim::UnitRTimes:
        return {a, Type::prod(Type::one(), a)};
      case Prim::SwapTimes:
        return {Type::prod(a, b), Type::prod(b, a)};
      case Prim::Distrib:
        return {Type::prod(Type::sum(a, b), c),
                Type::sum(Type::prod(a, c), Type::prod(b, c))};
      case Prim::Factor:
        return {Type::sum(Type::prod(a, c), Type::prod(b, c)),
                Type::prod(Type::sum(a, b), c)};
      case Prim::Absorb:
        return {Type::prod(Type::zero(), a), Type::zero()};
      case Prim::Unabsorb:
        return {Type::zero(), Type::prod(Type::zero(), a)};
    }
    return {a, a};
  }

  std::pair<Type, Type> gen(const Combinator& c, TypedComb& node) {
    std::pair<Type, Type> dc;
    switch (c.kind()) {
      case Combinator::Kind::Basic:
        dc = schema(c.prim());
        break;
      case Combinator::Kind::Fold: {
        const Type& ann = c.annotation();
        if (!isClosed(ann))
          throw IllFormedType("fold annotation is not closed: " + printType(ann));
        dc = {unrollMu(ann), ann};
        break;
      }
      case Combinator::Kind::Unfold: {
        const Type& ann = c.annotation();
        if (!isClosed(ann))
          throw IllFormedType("unfold annotation is not closed: " + printType(ann));
        dc = {ann, unrollMu(ann)};
        break;
      }
      case Combinator::Kind::Comp: {
        node.kids.resize(2);
        auto f = gen(c.first(), node.kids[0]);
        auto g = gen(c.second(), node.kids[1]);
        eq(f.second, g.first);
        dc = {f.first, g.second};
        break;
      }
      case Combinator::Kind::Sum: {
        node.kids.resize(2);
        auto f = gen(c.first(), node.kids[0]);
        auto g = gen(c.second(), node.kids[1]);
        dc = {Type::sum(f.first, g.first), Type::sum(f.second, g.second)};
        break;
      }
      case Combinator::Kind::Prod: {
        node.kids.resize(2);
        auto f = gen(c.first(), node.kids[0]);
        auto g = gen(c.second(), node.kids[1]);
        dc = {Type::prod(f.first, g.first), Type::prod(f.second, g.second)};
        break;
      }
      case Combinator::Kind::Trace: {
        node.kids.resize(1);
        auto f = gen(c.inner(), node.kids[0]);
        Type a = metas.fresh(), b = metas.fresh(), loop = metas.fresh();
        eq(f.first, Type::sum(a, loop));
        eq(f.second, Type::sum(b, loop));
        dc = {a, b};
        break;
      }
      case Combinator::Kind::Inv: {
        node.kids.resize(1);
        auto f = gen(c.inner(), node.kids[0]);
        dc = {f.second, f.first};
        break;
      }
    }
    node.dom = dc.first;
    node.cod = dc.second;
    return dc;
  }
};

void zonkTree(TypedComb& node, const Subst& s) {
  node.dom = zonk(node.dom, s);
  node.cod = zonk(node.cod, s);
  for (auto& k : node.kids) zonkTree(k, s);
}

void requireResolved(const TypedComb& node, const Combinator& c) {
  if (containsMeta(node.dom) || containsMeta(node.cod))
    throw AmbiguousType(printCombinator(c));
  for (const auto& k : node.kids) requireResolved(k, c);
}

}  // namespace

Type zonk(const Type& t, const Subst& s) {
  Type r = resolveRoot(t, s);
  switch (r.kind()) {
    case Type::Kind::Sum:
      return Type::sum(zonk(r.left(), s), zonk(r.right(), s));
    case Type::Kind::Prod:
      return Type::prod(zonk(r.left(), s), zonk(r.right(), s));
    case Type::Kind::Mu:
      return Type::mu(r.name(), zonk(r.body(), s));
    default:
      return r;
  }
}

Subst solveConstraints(const std::vector<Constraint>& cs) {
  Subst s;
  for (const auto& c : cs) unify(c.a, c.b, s);
  return s;
}

std::vector<Constraint> typingConstraints(const Combinator& c,
                                          std::optional<CombinatorType> ascription,
                                          Type& domOut, Type& codOut) {
  ConstraintGen g;
  TypedComb root;
  auto dc = g.gen(c, root);
  if (ascription) {
    if (containsMeta(ascription->dom) || containsMeta(ascription->cod))
      throw IllFormedType("ascription must not contain metavariables");
    g.eq(dc.first, ascription->dom);
    g.eq(dc.second, ascription->cod);
  }
  domOut = dc.first;
  codOut = dc.second;
  return g.constraints;
}

std::pair<CombinatorType, TypedComb> inferCombinatorTyped(
    const Combinator& c, std::optional<CombinatorType> ascription) {
  ConstraintGen g;
  TypedComb root;
  auto dc = g.gen(c, root);
  if (ascription) {
    if (containsMeta(ascription->dom) || containsMeta(ascription->cod))
      throw IllFormedType("ascription must not contain metavariables");
    g.eq(dc.first, ascription->dom);
    g.eq(dc.second, ascription->cod);
  }
  Subst s = solveConstraints(g.constraints);
  zonkTree(root, s);
  requireResolved(root, c);
  return {CombinatorType{root.dom, root.cod}, root};
}

CombinatorType inferCombinator(const Combinator& c,
                               std::optional<CombinatorType> ascription) {
  return inferCombinatorTyped(c, std::move(ascription)).first;
}

ProgramCheckError::ProgramCheckError(std::vector<Diagnostic> diags)
    : TypeError([&] {
        std::ostringstream os;
        os << diags.size() << " declaration(s) failed to check";
        return os.str();
      }()),
      diagnostics(std::move(diags)) {}

ProgramCheckResult checkProgramCollect(const SourceProgram& p) {
  ProgramCheckResult res;
  for (const auto& d : p.declarations) {
    try {
      if (!d.ascription)
        throw IllFormedType("missing type ascription for '" + d.name + "'");
      if (!isClosed(d.ascription->first) || !isClosed(d.ascription->second))
        throw IllFormedType("ascription for '" + d.name + "' is not closed");
      CombinatorType asc{d.ascription->first, d.ascription->second};
      res.types.emplace(d.name, inferCombinator(d.body, asc));
    } catch (const SyntaxError& e) {
      res.errors.push_back({d.name, d.line, d.column, e.message});
    } catch (const std::exception& e) {
      res.errors.push_back({d.name, d.line, d.column, e.what()});
    }
  }
  return res;
}

std::map<std::string, CombinatorType> checkProgram(const SourceProgram& p) {
  ProgramCheckResult res = checkProgramCollect(p);
  if (!res.ok()) throw ProgramCheckError(res.errors);
  return res.types;
}

}  // namespace pio
