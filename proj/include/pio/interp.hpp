#ifndef PIO_INTERP_HPP
#define PIO_INTERP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pio/errors.hpp"
#include "pio/syntax.hpp"

namespace pio {

// Loop and step budgets for evaluation; both must be >= 1. Trace fuel
// counts loop iterations, not combinator steps.
struct Fuel {
  std::int64_t maxTraceSteps = 10000;
  std::int64_t maxTotalSteps = 100000000;
};

// Outcome of running a combinator on a value. Undefined is a semantic
// outcome (the partiality of a partial injection), never an error;
// OutOfFuel may be a false negative for definedness.
class EvalResult {
 public:
  enum class Kind { Defined, Undefined, OutOfFuel };

  static EvalResult defined(Value v) { return EvalResult(Kind::Defined, std::move(v), 0); }
  static EvalResult undefined() { return EvalResult(Kind::Undefined, {}, 0); }
  static EvalResult outOfFuel(std::int64_t stepsUsed) {
    return EvalResult(Kind::OutOfFuel, {}, stepsUsed);
  }

  Kind kind() const { return kind_; }
  bool isDefined() const { return kind_ == Kind::Defined; }
  const Value& value() const { return *value_; }
  std::int64_t stepsUsed() const { return steps_; }

  bool operator==(const EvalResult& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Defined) return *value_ == *o.value_;
    return true;  // OutOfFuel compares equal regardless of the step count
  }
  bool operator!=(const EvalResult& o) const { return !(*this == o); }

 private:
  EvalResult(Kind k, std::optional<Value> v, std::int64_t s)
      : kind_(k), value_(std::move(v)), steps_(s) {}
  Kind kind_;
  std::optional<Value> value_;
  std::int64_t steps_;
};

// Value action of a single basic combinator (including annotated
// fold/unfold). Total on well-typed inputs; throws InternalTypeError when
// the value does not match the combinator's domain shape.
EvalResult evalBasic(const Combinator& c, const Value& v);

// Structural evaluation of an Inv-free combinator.
EvalResult eval(const Combinator& c, const Value& v, const Fuel& fuel = {});

// run eliminates Inv first; runBackward runs the structural dagger.
EvalResult run(const Combinator& c, const Value& v, const Fuel& fuel = {});
EvalResult runBackward(const Combinator& c, const Value& v, const Fuel& fuel = {});

// All values of the closed mu type t with fold-depth < depth, in canonical
// enumeration order. The body must be rig-polynomial in the bound variable.
std::vector<Value> unrollMuApproximant(const Type& t, int depth);

// ---- canonical enumeration of finite types ----
// Sums enumerate the left block first; products are row-major. This order
// is the bit-exact contract between interpreter values and oracle indices.

// Number of inhabitants; nullopt when t mentions mu.
std::optional<std::int64_t> typeCardinality(const Type& t);

std::vector<Value> enumerateValues(const Type& t);  // throws HasMu on mu types
std::int64_t indexOfValue(const Type& t, const Value& v);
Value valueAtIndex(const Type& t, std::int64_t index);

// Enumeration where every mu-typed subvalue is cut off at fold-depth < muDepth.
std::vector<Value> enumerateValuesBounded(const Type& t, int muDepth);

}  // namespace pio

#endif
