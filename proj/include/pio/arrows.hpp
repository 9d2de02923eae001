#ifndef PIO_ARROWS_HPP
#define PIO_ARROWS_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pio/interp.hpp"
#include "pio/pinj.hpp"
#include "pio/syntax.hpp"

namespace pio::arrows {

// One reversible function as a pair of mutually partial-inverse
// evaluators: forward(v) = Defined(w) implies backward(w) = Defined(v),
// and symmetrically.
struct RevFun {
  Type in;
  Type out;
  std::function<EvalResult(const Value&)> fwd;
  std::function<EvalResult(const Value&)> bwd;
};

RevFun revIdentity(Type t);
// Diagram order: f first, then g.
RevFun revCompose(const RevFun& f, const RevFun& g);
RevFun revInverse(const RevFun& f);
RevFun fromCombinator(const Combinator& c, Type dom, Type cod);
// Lift a finite partial injection along the canonical enumerations.
RevFun fromPInj(Type dom, Type cod, const pinj::PInj& f);
RevFun randomRevFun(std::mt19937_64& rng, const Type& dom, const Type& cod);

// Structural reversible coherence maps, as host functions.
RevFun revSwapProd(Type a, Type b);            // a*b <-> b*a
RevFun revRightUnitor(Type a);                 // a*1 <-> a
RevFun revAssocProd(Type a, Type b, Type c);   // a*(b*c) <-> (a*b)*c
RevFun revTensor(const RevFun& f, const RevFun& g);  // f (x) g on pairs

// An effectful computation X ~> Y: an opaque carrier that runs values,
// here always itself a RevFun between instance-specific carrier types.
struct Effectful {
  Type x;
  Type y;
  RevFun fn;
  EvalResult run(const Value& v) const { return fn.fwd(v); }
};

// Reversible-effect interface. first is absent on weak arrows; left is
// present only for instances with a sum action.
struct ArrowInstance {
  std::string name;
  std::optional<Type> stateType;
  std::function<Effectful(const RevFun&)> arr;
  std::function<Effectful(const Effectful&, const Effectful&)> seq;
  std::function<Effectful(const Effectful&)> inv;
  std::function<Effectful(const Effectful&, const Type&)> first;  // may be empty
  std::function<Effectful(const Effectful&, const Type&)> left;   // may be empty
  // instance-specific generators used by the law harness
  std::function<std::vector<Effectful>(const Type&, const Type&, std::mt19937_64&)>
      specials;
  bool weak() const { return !first; }
};

class GroupLawViolation : public std::runtime_error {
 public:
  explicit GroupLawViolation(const std::string& m) : std::runtime_error(m) {}
};
class ChoiceLawViolation : public std::runtime_error {
 public:
  explicit ChoiceLawViolation(const std::string& m) : std::runtime_error(m) {}
};
class CodecNotInjective : public std::runtime_error {
 public:
  explicit CodecNotInjective(const std::string& m) : std::runtime_error(m) {}
};
class NotSupported : public std::runtime_error {
 public:
  explicit NotSupported(const std::string& m) : std::runtime_error(m) {}
};

// ---- instances ----

ArrowInstance mkPure();
// pure, except inv returns the computation unchanged; daggerarrow3 must
// fail on it. For harness sanity checks only.
ArrowInstance mkBrokenPure();

ArrowInstance mkRState(const Type& S);
Effectful rstateGet(const Type& S, const Type& X);
Effectful rstateAssert(const Type& S, const Type& X);
Effectful rstateUpdate(const Type& S, const Type& X, const RevFun& f);

ArrowInstance mkReader(const Type& C);
struct InvarianceReport {
  bool ok = true;
  std::string violation;  // input and outputs when a context change was seen
};
InvarianceReport checkInvariance(const Effectful& eff, int muDepth = 4);

// A finite group presented reversibly: gmul a is the reversible map b -> a*b.
struct GroupSpec {
  Type carrier;
  Value gunit;
  std::function<RevFun(const Value&)> gmul;
  RevFun ginv;
};
GroupSpec zmod2Group();
// Throws GroupLawViolation unless spec satisfies the group axioms
// (checked by enumeration on the finite carrier).
ArrowInstance mkRewriter(const GroupSpec& spec);
Effectful rewrite(const GroupSpec& spec, const Type& X, const Value& a);

ArrowInstance mkError(const Type& E);
// Choice function p : E <-> E+E deciding whether an error came from this
// raise site; the canonical one routes the image of f left.
RevFun canonicalChoice(const RevFun& f);
// Throws ChoiceLawViolation unless p satisfies its three equations on the
// finite carrier E.
Effectful errRaise(const Type& E, const Type& X, const Type& Y, const RevFun& f,
                   const RevFun& p);
Effectful errHandle(const Type& E, const Type& X, const Type& Y, const RevFun& f,
                    const RevFun& p);

// Serialization codec: one reversible serializer per type.
struct Codec {
  std::function<Type(const Type&)> serializedType;
  std::function<RevFun(const Type&)> forType;
};
// Canonical textual printing of values into the string type.
Codec defaultCodec();
Type stringType();
Value stringToValue(const std::string& s);
std::string valueToString(const Value& v);
ArrowInstance mkSerializer(const Codec& codec = defaultCodec());

ArrowInstance mkVector();
Type listType(const Type& elem);
Value listNil();
Value listCons(const Value& head, const Value& tail);
std::optional<std::vector<Value>> listElements(const Value& v);
Value listOfElements(const std::vector<Value>& elems);

// left : A X Y -> A (X+Z) (Y+Z); throws NotSupported when the instance
// has no sum action.
Effectful mkLeft(const ArrowInstance& inst, const Effectful& a, const Type& Z);

// ---- law harness ----

struct LawFinding {
  std::string law;
  bool applicable = true;
  int cases = 0;
  bool passed = true;
  std::string counterexample;
};

struct LawReport {
  std::string instanceName;
  std::vector<LawFinding> findings;
  bool allPassed() const {
    for (const auto& f : findings)
      if (f.applicable && !f.passed) return false;
    return true;
  }
};

// Evaluates both sides of every applicable arrow/dagger/inverse law
// extensionally over the enumerated carrier domains (mu values cut at
// muDepth). budget caps the number of inputs per comparison.
LawReport checkLaws(const ArrowInstance& inst, const Type& X, const Type& Y,
                    const Type& Z, std::mt19937_64& rng, int budget = 4096,
                    int muDepth = 4);

}  // namespace pio::arrows

#endif
