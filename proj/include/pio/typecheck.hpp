#ifndef PIO_TYPECHECK_HPP
#define PIO_TYPECHECK_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pio/errors.hpp"
#include "pio/parser.hpp"
#include "pio/syntax.hpp"

namespace pio {

struct CombinatorType {
  Type dom;
  Type cod;
  bool operator==(const CombinatorType& o) const { return dom == o.dom && cod == o.cod; }
};

// Finite map from type variables to closed types, for checking values
// against open types.
using Assignment = std::map<std::string, Type>;

// true iff v : a is derivable. a must be closed (or closed under s).
bool checkValue(const Value& v, const Type& a);
bool checkValue(const Value& v, const Type& a, const Assignment& s);

// Combinator tree annotated with the resolved type at every node, in the
// same shape as the combinator it was inferred from.
struct TypedComb {
  Type dom = Type::zero();
  Type cod = Type::zero();
  std::vector<TypedComb> kids;
};

CombinatorType inferCombinator(const Combinator& c,
                               std::optional<CombinatorType> ascription = {});
// As above, also yielding per-node types (used by the denotational backend).
std::pair<CombinatorType, TypedComb> inferCombinatorTyped(
    const Combinator& c, std::optional<CombinatorType> ascription = {});

struct Diagnostic {
  std::string name;
  int line = 0;
  int column = 0;
  std::string message;
};

struct ProgramCheckResult {
  std::map<std::string, CombinatorType> types;
  std::vector<Diagnostic> errors;
  bool ok() const { return errors.empty(); }
};

ProgramCheckResult checkProgramCollect(const SourceProgram& p);

// Aggregated check failure for checkProgram.
class ProgramCheckError : public TypeError {
 public:
  explicit ProgramCheckError(std::vector<Diagnostic> diags);
  std::vector<Diagnostic> diagnostics;
};

// Checks every declaration against its (mandatory) ascription; throws
// ProgramCheckError aggregating per-declaration failures.
std::map<std::string, CombinatorType> checkProgram(const SourceProgram& p);

// --- unification internals, exposed for property tests ---

struct Constraint {
  Type a;
  Type b;
};

using Subst = std::map<int, Type>;

// Unify all constraints, in order. Throws UnificationFailure / OccursCheck.
Subst solveConstraints(const std::vector<Constraint>& cs);
Type zonk(const Type& t, const Subst& s);

// Constraints generated while typing c against the ascription; the root
// types are the first two entries' left-hand metas. Exposed so tests can
// solve permutations of the same constraint set.
std::vector<Constraint> typingConstraints(const Combinator& c,
                                          std::optional<CombinatorType> ascription,
                                          Type& domOut, Type& codOut);

}  // namespace pio

#endif
