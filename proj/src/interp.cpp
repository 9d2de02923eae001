#include "pio/interp.hpp"

#include <set>

#include "pio/parser.hpp"

namespace pio {

namespace {

[[noreturn]] void badShape(const char* who, const Value& v) {
  throw InternalTypeError(std::string(who) + " applied to ill-shaped value " +
                          printValue(v));
}

}  // namespace

EvalResult evalBasic(const Combinator& c, const Value& v) {
  using VK = Value::Kind;
  auto def = [](Value w) { return EvalResult::defined(std::move(w)); };
  switch (c.kind()) {
    case Combinator::Kind::Fold:
      return def(Value::fold(v));
    case Combinator::Kind::Unfold:
      if (v.kind() != VK::Fold) badShape("unfold", v);
      return def(v.arg());
    case Combinator::Kind::Basic:
      break;
    default:
      throw InternalTypeError("evalBasic on a non-basic combinator");
  }
  switch (c.prim()) {
    case Prim::Id:
      return def(v);
    case Prim::AssocLPlus:
      // a+(b+c) -> (a+b)+c
      if (v.kind() == VK::InL) return def(Value::inl(Value::inl(v.arg())));
      if (v.kind() == VK::InR) {
        const Value& w = v.arg();
        if (w.kind() == VK::InL) return def(Value::inl(Value::inr(w.arg())));
        if (w.kind() == VK::InR) return def(Value::inr(w.arg()));
      }
      badShape("assocl+", v);
    case Prim::AssocRPlus:
      // (a+b)+c -> a+(b+c)
      if (v.kind() == VK::InL) {
        const Value& w = v.arg();
        if (w.kind() == VK::InL) return def(Value::inl(w.arg()));
        if (w.kind() == VK::InR) return def(Value::inr(Value::inl(w.arg())));
      }
      if (v.kind() == VK::InR) return def(Value::inr(Value::inr(v.arg())));
      badShape("assocr+", v);
    case Prim::UnitLPlus:
      // 0+a -> a; only inr values inhabit the domain
      if (v.kind() == VK::InR) return def(v.arg());
      badShape("unitl+", v);
    case Prim::UnitRPlus:
      return def(Value::inr(v));
    case Prim::SwapPlus:
      if (v.kind() == VK::InL) return def(Value::inr(v.arg()));
      if (v.kind() == VK::InR) return def(Value::inl(v.arg()));
      badShape("swap+", v);
    case Prim::AssocLTimes:
      // a*(b*c) -> (a*b)*c
      if (v.kind() == VK::Pair && v.second().kind() == VK::Pair)
        return def(Value::pair(Value::pair(v.first(), v.second().first()),
                               v.second().second()));
      badShape("assocl*", v);
    case Prim::AssocRTimes:
      if (v.kind() == VK::Pair && v.first().kind() == VK::Pair)
        return def(Value::pair(v.first().first(),
                               Value::pair(v.first().second(), v.second())));
      badShape("assocr*", v);
    case Prim::UnitLTimes:
      // 1*a -> a
      if (v.kind() == VK::Pair && v.first().kind() == VK::Unit) return def(v.second());
      badShape("unitl*", v);
    case Prim::UnitRTimes:
      return def(Value::pair(Value::unit(), v));
    case Prim::SwapTimes:
      if (v.kind() == VK::Pair) return def(Value::pair(v.second(), v.first()));
      badShape("swap*", v);
    case Prim::Distrib:
      // (a+b)*c -> (a*c)+(b*c)
      if (v.kind() == VK::Pair) {
        const Value& s = v.first();
        if (s.kind() == VK::InL) return def(Value::inl(Value::pair(s.arg(), v.second())));
        if (s.kind() == VK::InR) return def(Value::inr(Value::pair(s.arg(), v.second())));
      }
      badShape("distrib", v);
    case Prim::Factor:
      // (a*c)+(b*c) -> (a+b)*c
      if (v.kind() == VK::InL && v.arg().kind() == VK::Pair)
        return def(Value::pair(Value::inl(v.arg().first()), v.arg().second()));
      if (v.kind() == VK::InR && v.arg().kind() == VK::Pair)
        return def(Value::pair(Value::inr(v.arg().first()), v.arg().second()));
      badShape("factor", v);
    case Prim::Absorb:
      badShape("absorb", v);  // domain 0*a is uninhabited
    case Prim::Unabsorb:
      badShape("unabsorb", v);  // domain 0 is uninhabited
  }
  badShape("basic", v);
}

namespace {

struct Evaluator {
  const Fuel& fuel;
  std::int64_t steps = 0;

  // nullopt = out of total steps
  bool chargeStep() {
    ++steps;
    return steps <= fuel.maxTotalSteps;
  }

  EvalResult go(const Combinator& c, const Value& v) {
    if (!chargeStep()) return EvalResult::outOfFuel(steps);
    switch (c.kind()) {
      case Combinator::Kind::Basic:
      case Combinator::Kind::Fold:
      case Combinator::Kind::Unfold:
        return evalBasic(c, v);
      case Combinator::Kind::Comp: {
        EvalResult r = go(c.first(), v);
        if (!r.isDefined()) return r;
        return go(c.second(), r.value());
      }
      case Combinator::Kind::Sum: {
        if (v.kind() == Value::Kind::InL) {
          EvalResult r = go(c.first(), v.arg());
          if (!r.isDefined()) return r;
          return EvalResult::defined(Value::inl(r.value()));
        }
        if (v.kind() == Value::Kind::InR) {
          EvalResult r = go(c.second(), v.arg());
          if (!r.isDefined()) return r;
          return EvalResult::defined(Value::inr(r.value()));
        }
        badShape("sum combinator", v);
      }
      case Combinator::Kind::Prod: {
        if (v.kind() != Value::Kind::Pair) badShape("product combinator", v);
        EvalResult l = go(c.first(), v.first());
        if (!l.isDefined()) return l;
        EvalResult r = go(c.second(), v.second());
        if (!r.isDefined()) return r;
        return EvalResult::defined(Value::pair(l.value(), r.value()));
      }
      case Combinator::Kind::Trace: {
        // f : a+u <-> b+u. Feed inl(v), loop on inr outputs. A repeated
        // loop state can never exit, so it is reported as Undefined, in
        // agreement with the denotational trace.
        Value current = Value::inl(v);
        std::set<Value> seen;
        for (std::int64_t i = 0; i < fuel.maxTraceSteps; ++i) {
          EvalResult r = go(c.inner(), current);
          if (!r.isDefined()) return r;
          const Value& out = r.value();
          if (out.kind() == Value::Kind::InL) return EvalResult::defined(out.arg());
          if (out.kind() != Value::Kind::InR) badShape("trace body output", out);
          if (!seen.insert(out.arg()).second) return EvalResult::undefined();
          current = out;
        }
        return EvalResult::outOfFuel(steps);
      }
      case Combinator::Kind::Inv:
        throw InternalTypeError("eval reached an Inv node; normalize first");
    }
    throw InternalTypeError("eval: bad node");
  }
};

}  // namespace

EvalResult eval(const Combinator& c, const Value& v, const Fuel& fuel) {
  Evaluator e{fuel};
  return e.go(c, v);
}

EvalResult run(const Combinator& c, const Value& v, const Fuel& fuel) {
  return eval(elimInv(c), v, fuel);
}

EvalResult runBackward(const Combinator& c, const Value& v, const Fuel& fuel) {
  return eval(structuralDagger(elimInv(c)), v, fuel);
}

namespace {

void requirePolynomialBody(const Type& body, const std::string& binder) {
  switch (body.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      requirePolynomialBody(body.left(), binder);
      requirePolynomialBody(body.right(), binder);
      return;
    case Type::Kind::Var:
      if (body.name() != binder)
        throw NotPolynomial("free variable '" + body.name() + "' in mu body");
      return;
    case Type::Kind::Mu:
      throw NotPolynomial("nested mu in mu body");
    case Type::Kind::Meta:
      throw NotPolynomial("metavariable in mu body");
  }
}

// Values of `body` where the bound variable ranges over varVals, in
// canonical order (sum: left first; product: row-major).
std::vector<Value> enumBody(const Type& body, const std::string& binder,
                            const std::vector<Value>& varVals) {
  switch (body.kind()) {
    case Type::Kind::Zero:
      return {};
    case Type::Kind::One:
      return {Value::unit()};
    case Type::Kind::Var:
      return varVals;
    case Type::Kind::Sum: {
      std::vector<Value> out;
      for (const auto& v : enumBody(body.left(), binder, varVals))
        out.push_back(Value::inl(v));
      for (const auto& v : enumBody(body.right(), binder, varVals))
        out.push_back(Value::inr(v));
      return out;
    }
    case Type::Kind::Prod: {
      std::vector<Value> ls = enumBody(body.left(), binder, varVals);
      std::vector<Value> rs = enumBody(body.right(), binder, varVals);
      std::vector<Value> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Value::pair(l, r));
      return out;
    }
    default:
      throw NotPolynomial("unexpected type in mu body");
  }
}

}  // namespace

std::vector<Value> unrollMuApproximant(const Type& t, int depth) {
  if (t.kind() != Type::Kind::Mu)
    throw NotPolynomial("unrollMuApproximant: not a mu type");
  if (!isClosed(t))
    throw NotPolynomial("unrollMuApproximant: type not closed");
  requirePolynomialBody(t.body(), t.name());
  std::vector<Value> level;  // stage 0 is empty
  for (int k = 0; k < depth; ++k) {
    std::vector<Value> nextRaw = enumBody(t.body(), t.name(), level);
    std::vector<Value> next;
    next.reserve(nextRaw.size());
    for (auto& v : nextRaw) next.push_back(Value::fold(std::move(v)));
    level = std::move(next);
  }
  return level;
}

std::optional<std::int64_t> typeCardinality(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Zero:
      return 0;
    case Type::Kind::One:
      return 1;
    case Type::Kind::Sum: {
      auto l = typeCardinality(t.left()), r = typeCardinality(t.right());
      if (!l || !r) return std::nullopt;
      return *l + *r;
    }
    case Type::Kind::Prod: {
      auto l = typeCardinality(t.left()), r = typeCardinality(t.right());
      if (!l || !r) return std::nullopt;
      return *l * *r;
    }
    case Type::Kind::Mu:
      return std::nullopt;
    case Type::Kind::Var:
    case Type::Kind::Meta:
      throw IllFormedType("typeCardinality: open type " + printType(t));
  }
  return std::nullopt;
}

std::vector<Value> enumerateValues(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Zero:
      return {};
    case Type::Kind::One:
      return {Value::unit()};
    case Type::Kind::Sum: {
      std::vector<Value> out;
      for (const auto& v : enumerateValues(t.left())) out.push_back(Value::inl(v));
      for (const auto& v : enumerateValues(t.right())) out.push_back(Value::inr(v));
      return out;
    }
    case Type::Kind::Prod: {
      std::vector<Value> ls = enumerateValues(t.left());
      std::vector<Value> rs = enumerateValues(t.right());
      std::vector<Value> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Value::pair(l, r));
      return out;
    }
    case Type::Kind::Mu:
      throw HasMu("enumerateValues: mu type " + printType(t));
    case Type::Kind::Var:
    case Type::Kind::Meta:
      throw IllFormedType("enumerateValues: open type " + printType(t));
  }
  return {};
}

std::int64_t indexOfValue(const Type& t, const Value& v) {
  switch (t.kind()) {
    case Type::Kind::One:
      if (v.kind() == Value::Kind::Unit) return 0;
      break;
    case Type::Kind::Sum: {
      if (v.kind() == Value::Kind::InL) return indexOfValue(t.left(), v.arg());
      if (v.kind() == Value::Kind::InR) {
        auto l = typeCardinality(t.left());
        if (!l) throw HasMu("indexOfValue: mu type");
        return *l + indexOfValue(t.right(), v.arg());
      }
      break;
    }
    case Type::Kind::Prod: {
      if (v.kind() == Value::Kind::Pair) {
        auto r = typeCardinality(t.right());
        if (!r) throw HasMu("indexOfValue: mu type");
        return indexOfValue(t.left(), v.first()) * *r +
               indexOfValue(t.right(), v.second());
      }
      break;
    }
    default:
      break;
  }
  throw InternalTypeError("indexOfValue: value " + printValue(v) +
                          " does not inhabit " + printType(t));
}

Value valueAtIndex(const Type& t, std::int64_t index) {
  switch (t.kind()) {
    case Type::Kind::One:
      if (index == 0) return Value::unit();
      break;
    case Type::Kind::Sum: {
      auto l = typeCardinality(t.left());
      if (!l) throw HasMu("valueAtIndex: mu type");
      if (index < *l) return Value::inl(valueAtIndex(t.left(), index));
      return Value::inr(valueAtIndex(t.right(), index - *l));
    }
    case Type::Kind::Prod: {
      auto r = typeCardinality(t.right());
      if (!r) throw HasMu("valueAtIndex: mu type");
      return Value::pair(valueAtIndex(t.left(), index / *r),
                         valueAtIndex(t.right(), index % *r));
    }
    default:
      break;
  }
  throw InternalTypeError("valueAtIndex: index out of range for " + printType(t));
}

std::vector<Value> enumerateValuesBounded(const Type& t, int muDepth) {
  switch (t.kind()) {
    case Type::Kind::Mu:
      return unrollMuApproximant(t, muDepth);
    case Type::Kind::Sum: {
      std::vector<Value> out;
      for (const auto& v : enumerateValuesBounded(t.left(), muDepth))
        out.push_back(Value::inl(v));
      for (const auto& v : enumerateValuesBounded(t.right(), muDepth))
        out.push_back(Value::inr(v));
      return out;
    }
    case Type::Kind::Prod: {
      std::vector<Value> ls = enumerateValuesBounded(t.left(), muDepth);
      std::vector<Value> rs = enumerateValuesBounded(t.right(), muDepth);
      std::vector<Value> out;
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Value::pair(l, r));
      return out;
    }
    default:
      return enumerateValues(t);
  }
}

}  // namespace pio
