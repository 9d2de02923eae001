#ifndef PIO_SYNTAX_HPP
#define PIO_SYNTAX_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace pio {

// Value types of the combinator language: 0, 1, sums, products, type
// variables and mu-bound recursive types. Nodes are immutable and shared;
// Type behaves as a value. A default-constructed Type is Zero.
class Type {
 public:
  enum class Kind { Zero, One, Sum, Prod, Var, Mu, Meta };

  Type();
  static Type zero();
  static Type one();
  static Type sum(Type left, Type right);
  static Type prod(Type left, Type right);
  static Type var(std::string name);
  static Type mu(std::string binder, Type body);
  // Unification metavariable. Never produced by the parser; inference
  // guarantees none survive in a reported type.
  static Type meta(int id);

  Kind kind() const;
  Type left() const;    // Sum, Prod
  Type right() const;   // Sum, Prod
  const std::string& name() const;  // Var, Mu
  Type body() const;    // Mu
  int metaId() const;

  // Equality up to renaming of mu-bound variables (de Bruijn comparison).
  bool operator==(const Type& other) const { return compare(other) == 0; }
  bool operator!=(const Type& other) const { return compare(other) != 0; }
  bool operator<(const Type& other) const { return compare(other) < 0; }
  int compare(const Type& other) const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> freeVars(const Type& a);
bool isClosed(const Type& a);
bool containsMu(const Type& a);
bool containsMeta(const Type& a);

// Capture-avoiding substitution a[b/x].
Type substitute(const Type& a, const std::string& x, const Type& b);

// One-step unrolling body[mu x.body / x] of a mu type.
Type unrollMu(const Type& muType);

// Closed canonical values: (), inl v, inr v, (v, w), fold v. A
// default-constructed Value is Unit.
class Value {
 public:
  enum class Kind { Unit, InL, InR, Pair, Fold };

  Value();
  static Value unit();
  static Value inl(Value v);
  static Value inr(Value v);
  static Value pair(Value a, Value b);
  static Value fold(Value v);

  Kind kind() const;
  Value arg() const;     // InL, InR, Fold
  Value first() const;   // Pair
  Value second() const;  // Pair

  bool operator==(const Value& other) const { return compare(other) == 0; }
  bool operator!=(const Value& other) const { return compare(other) != 0; }
  bool operator<(const Value& other) const { return compare(other) < 0; }
  int compare(const Value& other) const;

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// The basic combinators without annotations. Fold/Unfold live outside this
// enum because they carry a type annotation.
enum class Prim {
  Id,
  AssocLPlus,
  AssocRPlus,
  UnitLPlus,
  UnitRPlus,
  SwapPlus,
  AssocLTimes,
  AssocRTimes,
  UnitLTimes,
  UnitRTimes,
  SwapTimes,
  Distrib,
  Factor,
  Absorb,
  Unabsorb,
};

const char* primName(Prim p);

// A default-constructed Combinator is id.
class Combinator {
 public:
  enum class Kind { Basic, Fold, Unfold, Comp, Sum, Prod, Trace, Inv };

  Combinator();
  static Combinator basic(Prim p);
  // annotation must be a Mu type; checked here.
  static Combinator fold(Type annotation);
  static Combinator unfold(Type annotation);
  // Diagram order: comp(f, g) applies f first, then g.
  static Combinator comp(Combinator f, Combinator g);
  static Combinator sum(Combinator f, Combinator g);
  static Combinator prod(Combinator f, Combinator g);
  static Combinator trace(Combinator f);
  static Combinator inv(Combinator f);

  Kind kind() const;
  Prim prim() const;                 // Basic
  const Type& annotation() const;    // Fold, Unfold
  Combinator first() const;   // Comp, Sum, Prod
  Combinator second() const;  // Comp, Sum, Prod
  Combinator inner() const;   // Trace, Inv

  bool operator==(const Combinator& other) const { return compare(other) == 0; }
  bool operator!=(const Combinator& other) const { return compare(other) != 0; }
  int compare(const Combinator& other) const;

 private:
  struct Node;
  explicit Combinator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Canonical inverse. Basic combinators map to their partners, composition
// reverses, sums/products/traces invert componentwise, and inv nodes are
// absorbed. The result never contains an Inv node, and on Inv-free input
// the operation is an involution.
Combinator structuralDagger(const Combinator& c);

// Remove all Inv nodes without otherwise changing the combinator.
Combinator elimInv(const Combinator& c);

bool containsInv(const Combinator& c);

}  // namespace pio

#endif
