#ifndef PIO_PARSER_HPP
#define PIO_PARSER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pio/errors.hpp"
#include "pio/syntax.hpp"

namespace pio {

// A parsed .pio file. Declaration bodies are stored with references to
// earlier declarations already inlined, so each body stands alone.
struct Declaration {
  std::string name;
  std::optional<std::pair<Type, Type>> ascription;
  Combinator body;
  int line = 0;
  int column = 0;
};

struct SourceProgram {
  std::vector<Declaration> declarations;
  std::optional<std::string> entry;

  const Declaration* find(const std::string& name) const;
  // The declaration `run` acts on: the entry if set, otherwise the last one.
  const Declaration* entryDeclaration() const;
};

Type parseType(const std::string& text);
Combinator parseCombinator(const std::string& text);
Value parseValue(const std::string& text);
SourceProgram parseProgram(const std::string& text);

std::string printType(const Type& t);
std::string printValue(const Value& v);
std::string printCombinator(const Combinator& c);
std::string printProgram(const SourceProgram& p);

}  // namespace pio

#endif
