#include "pio/syntax.hpp"

#include <stdexcept>

namespace pio {

struct Type::Node {
  Kind kind;
  std::shared_ptr<const Node> a, b;  // Sum/Prod children; Mu body in a
  std::string name;                  // Var name / Mu binder
  int metaId = -1;
  explicit Node(Kind k) : kind(k) {}
};

Type::Type() : Type(zero()) {}

Type Type::zero() {
  static const Type t{std::make_shared<const Node>(Kind::Zero)};
  return t;
}

Type Type::one() {
  static const Type t{std::make_shared<const Node>(Kind::One)};
  return t;
}

Type Type::sum(Type left, Type right) {
  auto n = std::make_shared<Node>(Kind::Sum);
  n->a = std::move(left.node_);
  n->b = std::move(right.node_);
  return Type{std::move(n)};
}

Type Type::prod(Type left, Type right) {
  auto n = std::make_shared<Node>(Kind::Prod);
  n->a = std::move(left.node_);
  n->b = std::move(right.node_);
  return Type{std::move(n)};
}

Type Type::var(std::string name) {
  auto n = std::make_shared<Node>(Kind::Var);
  n->name = std::move(name);
  return Type{std::move(n)};
}

Type Type::mu(std::string binder, Type body) {
  auto n = std::make_shared<Node>(Kind::Mu);
  n->name = std::move(binder);
  n->a = std::move(body.node_);
  return Type{std::move(n)};
}

Type Type::meta(int id) {
  auto n = std::make_shared<Node>(Kind::Meta);
  n->metaId = id;
  return Type{std::move(n)};
}

Type::Kind Type::kind() const { return node_->kind; }

Type Type::left() const { return Type{node_->a}; }
Type Type::right() const { return Type{node_->b}; }
Type Type::body() const { return Type{node_->a}; }
const std::string& Type::name() const { return node_->name; }
int Type::metaId() const { return node_->metaId; }

namespace {

int compareTypes(const Type& a, const Type& b,
                 std::vector<std::string>& envA, std::vector<std::string>& envB) {
  int ka = static_cast<int>(a.kind());
  int kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
      return 0;
    case Type::Kind::Meta:
      return a.metaId() < b.metaId() ? -1 : a.metaId() > b.metaId() ? 1 : 0;
    case Type::Kind::Sum:
    case Type::Kind::Prod: {
      int c = compareTypes(a.left(), b.left(), envA, envB);
      if (c != 0) return c;
      return compareTypes(a.right(), b.right(), envA, envB);
    }
    case Type::Kind::Var: {
      int ia = -1, ib = -1;
      for (int i = static_cast<int>(envA.size()) - 1; i >= 0; --i)
        if (envA[static_cast<size_t>(i)] == a.name()) { ia = i; break; }
      for (int i = static_cast<int>(envB.size()) - 1; i >= 0; --i)
        if (envB[static_cast<size_t>(i)] == b.name()) { ib = i; break; }
      if (ia != ib) return ia < ib ? -1 : 1;
      if (ia == -1) {
        int c = a.name().compare(b.name());
        return c < 0 ? -1 : c > 0 ? 1 : 0;
      }
      return 0;
    }
    case Type::Kind::Mu: {
      envA.push_back(a.name());
      envB.push_back(b.name());
      int c = compareTypes(a.body(), b.body(), envA, envB);
      envA.pop_back();
      envB.pop_back();
      return c;
    }
  }
  return 0;
}

}  // namespace

int Type::compare(const Type& other) const {
  if (node_ == other.node_) return 0;
  std::vector<std::string> envA, envB;
  return compareTypes(*this, other, envA, envB);
}

namespace {

void collectFree(const Type& a, std::vector<std::string>& bound,
                 std::set<std::string>& out) {
  switch (a.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
    case Type::Kind::Meta:
      return;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      collectFree(a.left(), bound, out);
      collectFree(a.right(), bound, out);
      return;
    case Type::Kind::Var:
      for (const auto& b : bound)
        if (b == a.name()) return;
      out.insert(a.name());
      return;
    case Type::Kind::Mu:
      bound.push_back(a.name());
      collectFree(a.body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::set<std::string> freeVars(const Type& a) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collectFree(a, bound, out);
  return out;
}

bool isClosed(const Type& a) { return freeVars(a).empty(); }

bool containsMu(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Mu:
      return true;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      return containsMu(a.left()) || containsMu(a.right());
    default:
      return false;
  }
}

bool containsMeta(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Meta:
      return true;
    case Type::Kind::Sum:
    case Type::Kind::Prod:
      return containsMeta(a.left()) || containsMeta(a.right());
    case Type::Kind::Mu:
      return containsMeta(a.body());
    default:
      return false;
  }
}

namespace {

std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

Type substitute(const Type& a, const std::string& x, const Type& b) {
  switch (a.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::One:
    case Type::Kind::Meta:
      return a;
    case Type::Kind::Sum:
      return Type::sum(substitute(a.left(), x, b), substitute(a.right(), x, b));
    case Type::Kind::Prod:
      return Type::prod(substitute(a.left(), x, b), substitute(a.right(), x, b));
    case Type::Kind::Var:
      return a.name() == x ? b : a;
    case Type::Kind::Mu: {
      if (a.name() == x) return a;  // shadowed
      auto fvBody = freeVars(a.body());
      if (!fvBody.count(x)) return a;
      auto fvB = freeVars(b);
      if (fvB.count(a.name())) {
        std::set<std::string> avoid = fvB;
        for (const auto& v : fvBody) avoid.insert(v);
        avoid.insert(x);
        std::string fresh = freshName(a.name(), avoid);
        Type renamed = substitute(a.body(), a.name(), Type::var(fresh));
        return Type::mu(fresh, substitute(renamed, x, b));
      }
      return Type::mu(a.name(), substitute(a.body(), x, b));
    }
  }
  return a;
}

Type unrollMu(const Type& muType) {
  if (muType.kind() != Type::Kind::Mu)
    throw std::invalid_argument("unrollMu: not a mu type");
  return substitute(muType.body(), muType.name(), muType);
}

struct Value::Node {
  Kind kind;
  std::shared_ptr<const Node> a, b;
  explicit Node(Kind k) : kind(k) {}
};

Value::Value() : Value(unit()) {}

Value Value::unit() {
  static const Value v{std::make_shared<const Node>(Kind::Unit)};
  return v;
}

Value Value::inl(Value v) {
  auto n = std::make_shared<Node>(Kind::InL);
  n->a = std::move(v.node_);
  return Value{std::move(n)};
}

Value Value::inr(Value v) {
  auto n = std::make_shared<Node>(Kind::InR);
  n->a = std::move(v.node_);
  return Value{std::move(n)};
}

Value Value::pair(Value a, Value b) {
  auto n = std::make_shared<Node>(Kind::Pair);
  n->a = std::move(a.node_);
  n->b = std::move(b.node_);
  return Value{std::move(n)};
}

Value Value::fold(Value v) {
  auto n = std::make_shared<Node>(Kind::Fold);
  n->a = std::move(v.node_);
  return Value{std::move(n)};
}

Value::Kind Value::kind() const { return node_->kind; }
Value Value::arg() const { return Value{node_->a}; }
Value Value::first() const { return Value{node_->a}; }
Value Value::second() const { return Value{node_->b}; }

int Value::compare(const Value& other) const {
  if (node_ == other.node_) return 0;
  int ka = static_cast<int>(kind());
  int kb = static_cast<int>(other.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (kind()) {
    case Kind::Unit:
      return 0;
    case Kind::InL:
    case Kind::InR:
    case Kind::Fold:
      return arg().compare(other.arg());
    case Kind::Pair: {
      int c = first().compare(other.first());
      if (c != 0) return c;
      return second().compare(other.second());
    }
  }
  return 0;
}

const char* primName(Prim p) {
  switch (p) {
    case Prim::Id: return "id";
    case Prim::AssocLPlus: return "assocl+";
    case Prim::AssocRPlus: return "assocr+";
    case Prim::UnitLPlus: return "unitl+";
    case Prim::UnitRPlus: return "unitr+";
    case Prim::SwapPlus: return "swap+";
    case Prim::AssocLTimes: return "assocl*";
    case Prim::AssocRTimes: return "assocr*";
    case Prim::UnitLTimes: return "unitl*";
    case Prim::UnitRTimes: return "unitr*";
    case Prim::SwapTimes: return "swap*";
    case Prim::Distrib: return "distrib";
    case Prim::Factor: return "factor";
    case Prim::Absorb: return "absorb";
    case Prim::Unabsorb: return "unabsorb";
  }
  return "?";
}

struct Combinator::Node {
  Kind kind;
  Prim prim = Prim::Id;
  Type ann;
  std::shared_ptr<const Node> f, g;
  explicit Node(Kind k) : kind(k) {}
};

Combinator::Combinator() : Combinator(basic(Prim::Id)) {}

Combinator Combinator::basic(Prim p) {
  auto n = std::make_shared<Node>(Kind::Basic);
  n->prim = p;
  return Combinator{std::move(n)};
}

Combinator Combinator::fold(Type annotation) {
  if (annotation.kind() != Type::Kind::Mu)
    throw std::invalid_argument("fold annotation must be a mu type");
  auto n = std::make_shared<Node>(Kind::Fold);
  n->ann = std::move(annotation);
  return Combinator{std::move(n)};
}

Combinator Combinator::unfold(Type annotation) {
  if (annotation.kind() != Type::Kind::Mu)
    throw std::invalid_argument("unfold annotation must be a mu type");
  auto n = std::make_shared<Node>(Kind::Unfold);
  n->ann = std::move(annotation);
  return Combinator{std::move(n)};
}

Combinator Combinator::comp(Combinator f, Combinator g) {
  auto n = std::make_shared<Node>(Kind::Comp);
  n->f = std::move(f.node_);
  n->g = std::move(g.node_);
  return Combinator{std::move(n)};
}

Combinator Combinator::sum(Combinator f, Combinator g) {
  auto n = std::make_shared<Node>(Kind::Sum);
  n->f = std::move(f.node_);
  n->g = std::move(g.node_);
  return Combinator{std::move(n)};
}

Combinator Combinator::prod(Combinator f, Combinator g) {
  auto n = std::make_shared<Node>(Kind::Prod);
  n->f = std::move(f.node_);
  n->g = std::move(g.node_);
  return Combinator{std::move(n)};
}

Combinator Combinator::trace(Combinator f) {
  auto n = std::make_shared<Node>(Kind::Trace);
  n->f = std::move(f.node_);
  return Combinator{std::move(n)};
}

Combinator Combinator::inv(Combinator f) {
  auto n = std::make_shared<Node>(Kind::Inv);
  n->f = std::move(f.node_);
  return Combinator{std::move(n)};
}

Combinator::Kind Combinator::kind() const { return node_->kind; }
Prim Combinator::prim() const { return node_->prim; }
const Type& Combinator::annotation() const { return node_->ann; }
Combinator Combinator::first() const { return Combinator{node_->f}; }
Combinator Combinator::second() const { return Combinator{node_->g}; }
Combinator Combinator::inner() const { return Combinator{node_->f}; }

int Combinator::compare(const Combinator& other) const {
  if (node_ == other.node_) return 0;
  int ka = static_cast<int>(kind());
  int kb = static_cast<int>(other.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (kind()) {
    case Kind::Basic: {
      int pa = static_cast<int>(prim()), pb = static_cast<int>(other.prim());
      return pa < pb ? -1 : pa > pb ? 1 : 0;
    }
    case Kind::Fold:
    case Kind::Unfold:
      return annotation().compare(other.annotation());
    case Kind::Comp:
    case Kind::Sum:
    case Kind::Prod: {
      int c = first().compare(other.first());
      if (c != 0) return c;
      return second().compare(other.second());
    }
    case Kind::Trace:
    case Kind::Inv:
      return inner().compare(other.inner());
  }
  return 0;
}

namespace {

Prim primDagger(Prim p) {
  switch (p) {
    case Prim::Id: return Prim::Id;
    case Prim::AssocLPlus: return Prim::AssocRPlus;
    case Prim::AssocRPlus: return Prim::AssocLPlus;
    case Prim::UnitLPlus: return Prim::UnitRPlus;
    case Prim::UnitRPlus: return Prim::UnitLPlus;
    case Prim::SwapPlus: return Prim::SwapPlus;
    case Prim::AssocLTimes: return Prim::AssocRTimes;
    case Prim::AssocRTimes: return Prim::AssocLTimes;
    case Prim::UnitLTimes: return Prim::UnitRTimes;
    case Prim::UnitRTimes: return Prim::UnitLTimes;
    case Prim::SwapTimes: return Prim::SwapTimes;
    case Prim::Distrib: return Prim::Factor;
    case Prim::Factor: return Prim::Distrib;
    case Prim::Absorb: return Prim::Unabsorb;
    case Prim::Unabsorb: return Prim::Absorb;
  }
  return p;
}

}  // namespace

Combinator structuralDagger(const Combinator& c) {
  switch (c.kind()) {
    case Combinator::Kind::Basic:
      return Combinator::basic(primDagger(c.prim()));
    case Combinator::Kind::Fold:
      return Combinator::unfold(c.annotation());
    case Combinator::Kind::Unfold:
      return Combinator::fold(c.annotation());
    case Combinator::Kind::Comp:
      return Combinator::comp(structuralDagger(c.second()), structuralDagger(c.first()));
    case Combinator::Kind::Sum:
      return Combinator::sum(structuralDagger(c.first()), structuralDagger(c.second()));
    case Combinator::Kind::Prod:
      return Combinator::prod(structuralDagger(c.first()), structuralDagger(c.second()));
    case Combinator::Kind::Trace:
      return Combinator::trace(structuralDagger(c.inner()));
    case Combinator::Kind::Inv:
      return elimInv(c.inner());
  }
  throw std::logic_error("structuralDagger: bad node");
}

Combinator elimInv(const Combinator& c) {
  switch (c.kind()) {
    case Combinator::Kind::Basic:
    case Combinator::Kind::Fold:
    case Combinator::Kind::Unfold:
      return c;
    case Combinator::Kind::Comp:
      return Combinator::comp(elimInv(c.first()), elimInv(c.second()));
    case Combinator::Kind::Sum:
      return Combinator::sum(elimInv(c.first()), elimInv(c.second()));
    case Combinator::Kind::Prod:
      return Combinator::prod(elimInv(c.first()), elimInv(c.second()));
    case Combinator::Kind::Trace:
      return Combinator::trace(elimInv(c.inner()));
    case Combinator::Kind::Inv:
      return structuralDagger(elimInv(c.inner()));
  }
  throw std::logic_error("elimInv: bad node");
}

bool containsInv(const Combinator& c) {
  switch (c.kind()) {
    case Combinator::Kind::Basic:
    case Combinator::Kind::Fold:
    case Combinator::Kind::Unfold:
      return false;
    case Combinator::Kind::Comp:
    case Combinator::Kind::Sum:
    case Combinator::Kind::Prod:
      return containsInv(c.first()) || containsInv(c.second());
    case Combinator::Kind::Trace:
      return containsInv(c.inner());
    case Combinator::Kind::Inv:
      return true;
  }
  return false;
}

}  // namespace pio
