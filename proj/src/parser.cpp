#include "pio/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace pio {

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Plus,
  Star,
  Dot,
  Colon,
  Equals,
  Arrow,    // <->
  OPlus,    // (+)
  OTimes,   // (*)
  Digit,    // 0 or 1
  Ident,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identCont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool gluesWithSign(const std::string& s) {
  return s == "assocl" || s == "assocr" || s == "unitl" || s == "unitr" || s == "swap";
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::string text, size_t len) {
      out.push_back(Token{k, std::move(text), tl, tc});
      bump(len);
    };
    if (c == '(') {
      if (i + 2 < src.size() && src[i + 1] == '+' && src[i + 2] == ')') {
        push(Tok::OPlus, "(+)", 3);
      } else if (i + 2 < src.size() && src[i + 1] == '*' && src[i + 2] == ')') {
        push(Tok::OTimes, "(*)", 3);
      } else {
        push(Tok::LParen, "(", 1);
      }
      continue;
    }
    if (c == '<' && i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>') {
      push(Tok::Arrow, "<->", 3);
      continue;
    }
    switch (c) {
      case ')': push(Tok::RParen, ")", 1); continue;
      case '[': push(Tok::LBracket, "[", 1); continue;
      case ']': push(Tok::RBracket, "]", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case ';': push(Tok::Semi, ";", 1); continue;
      case '+': push(Tok::Plus, "+", 1); continue;
      case '*': push(Tok::Star, "*", 1); continue;
      case '.': push(Tok::Dot, ".", 1); continue;
      case ':': push(Tok::Colon, ":", 1); continue;
      case '=': push(Tok::Equals, "=", 1); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string text = src.substr(i, j - i);
      if (text != "0" && text != "1")
        throw SyntaxError(tl, tc, "unexpected number '" + text + "'");
      push(Tok::Digit, text, text.size());
      continue;
    }
    if (identStart(c)) {
      size_t j = i;
      while (j < src.size() && identCont(src[j])) ++j;
      std::string text = src.substr(i, j - i);
      if (j < src.size() && (src[j] == '+' || src[j] == '*') && gluesWithSign(text)) {
        text += src[j];
        ++j;
      }
      push(Tok::Ident, text, text.size());
      continue;
    }
    throw SyntaxError(tl, tc, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool atIdent(const char* s) const { return at(Tok::Ident) && peek().text == s; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, msg + ", got " + got);
  }

  // ---- types ----
  Type typeExpr() { return sumType(); }

  Type sumType() {
    Type lhs = prodType();
    if (at(Tok::Plus)) {
      next();
      return Type::sum(std::move(lhs), sumType());
    }
    return lhs;
  }

  Type prodType() {
    Type lhs = atomType();
    if (at(Tok::Star)) {
      next();
      return Type::prod(std::move(lhs), prodType());
    }
    return lhs;
  }

  Type atomType() {
    if (at(Tok::Digit)) {
      Token t = next();
      return t.text == "0" ? Type::zero() : Type::one();
    }
    if (at(Tok::LParen)) {
      next();
      Type t = typeExpr();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (atIdent("mu")) {
      next();
      Token name = expect(Tok::Ident, "type variable after 'mu'");
      expect(Tok::Dot, "'.' after mu binder");
      return Type::mu(name.text, typeExpr());
    }
    if (at(Tok::Ident)) {
      Token t = next();
      return Type::var(t.text);
    }
    fail("expected a type");
  }

  // ---- values ----
  Value valueExpr() {
    if (at(Tok::LParen)) {
      next();
      if (at(Tok::RParen)) {
        next();
        return Value::unit();
      }
      Value a = valueExpr();
      if (at(Tok::Comma)) {
        next();
        Value b = valueExpr();
        expect(Tok::RParen, "')'");
        return Value::pair(std::move(a), std::move(b));
      }
      expect(Tok::RParen, "')' or ','");
      return a;
    }
    if (atIdent("inl")) {
      next();
      return Value::inl(valueExpr());
    }
    if (atIdent("inr")) {
      next();
      return Value::inr(valueExpr());
    }
    if (atIdent("fold")) {
      next();
      return Value::fold(valueExpr());
    }
    fail("expected a value");
  }

  // ---- combinators ----
  using Env = std::map<std::string, Combinator>;

  Combinator combExpr(const Env* env) {
    Combinator lhs = sumComb(env);
    if (at(Tok::Semi)) {
      next();
      return Combinator::comp(std::move(lhs), combExpr(env));
    }
    return lhs;
  }

  Combinator sumComb(const Env* env) {
    Combinator lhs = prodComb(env);
    if (at(Tok::OPlus)) {
      next();
      return Combinator::sum(std::move(lhs), sumComb(env));
    }
    return lhs;
  }

  Combinator prodComb(const Env* env) {
    Combinator lhs = atomComb(env);
    if (at(Tok::OTimes)) {
      next();
      return Combinator::prod(std::move(lhs), prodComb(env));
    }
    return lhs;
  }

  Combinator atomComb(const Env* env) {
    if (at(Tok::LParen)) {
      next();
      Combinator c = combExpr(env);
      expect(Tok::RParen, "')'");
      return c;
    }
    if (!at(Tok::Ident)) fail("expected a combinator");
    Token t = peek();
    static const std::map<std::string, Prim> prims = {
        {"id", Prim::Id},
        {"assocl+", Prim::AssocLPlus},
        {"assocr+", Prim::AssocRPlus},
        {"unitl+", Prim::UnitLPlus},
        {"unitr+", Prim::UnitRPlus},
        {"swap+", Prim::SwapPlus},
        {"assocl*", Prim::AssocLTimes},
        {"assocr*", Prim::AssocRTimes},
        {"unitl*", Prim::UnitLTimes},
        {"unitr*", Prim::UnitRTimes},
        {"swap*", Prim::SwapTimes},
        {"distrib", Prim::Distrib},
        {"factor", Prim::Factor},
        {"absorb", Prim::Absorb},
        {"unabsorb", Prim::Unabsorb},
    };
    auto it = prims.find(t.text);
    if (it != prims.end()) {
      next();
      return Combinator::basic(it->second);
    }
    if (t.text == "fold" || t.text == "unfold") {
      next();
      if (!at(Tok::LBracket))
        throw SyntaxError(t.line, t.col, t.text + " requires a [type] annotation");
      next();
      Type ann = typeExpr();
      expect(Tok::RBracket, "']'");
      if (ann.kind() != Type::Kind::Mu)
        throw SyntaxError(t.line, t.col, t.text + " annotation must be a mu type");
      return t.text == "fold" ? Combinator::fold(std::move(ann))
                              : Combinator::unfold(std::move(ann));
    }
    if (t.text == "trace" || t.text == "inv") {
      next();
      expect(Tok::LParen, "'('");
      Combinator c = combExpr(env);
      expect(Tok::RParen, "')'");
      return t.text == "trace" ? Combinator::trace(std::move(c))
                               : Combinator::inv(std::move(c));
    }
    if (env) {
      auto ref = env->find(t.text);
      if (ref != env->end()) {
        next();
        return ref->second;
      }
    }
    throw SyntaxError(t.line, t.col, "unknown combinator '" + t.text + "'");
  }

  // ---- programs ----
  SourceProgram program() {
    SourceProgram prog;
    Env env;
    while (!at(Tok::End)) {
      Token name = expect(Tok::Ident, "declaration name");
      if (name.text == "main") {
        expect(Tok::Equals, "'=' after main");
        Token target = expect(Tok::Ident, "entry name");
        if (!env.count(target.text))
          throw SyntaxError(target.line, target.col,
                            "main refers to unknown declaration '" + target.text + "'");
        if (prog.entry)
          throw SyntaxError(name.line, name.col, "duplicate main directive");
        prog.entry = target.text;
        continue;
      }
      if (env.count(name.text))
        throw SyntaxError(name.line, name.col,
                          "duplicate declaration '" + name.text + "'");
      expect(Tok::Colon, "':' after declaration name");
      Type dom = typeExpr();
      expect(Tok::Arrow, "'<->'");
      Type cod = typeExpr();
      expect(Tok::Equals, "'='");
      Combinator body = combExpr(&env);
      Declaration d;
      d.name = name.text;
      d.ascription = std::make_pair(std::move(dom), std::move(cod));
      d.body = body;
      d.line = name.line;
      d.column = name.col;
      env.emplace(d.name, d.body);
      prog.declarations.push_back(std::move(d));
    }
    return prog;
  }

  void expectEnd() {
    if (!at(Tok::End)) fail("trailing input");
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

int typePrec(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Mu: return 0;
    case Type::Kind::Sum: return 1;
    case Type::Kind::Prod: return 2;
    default: return 3;
  }
}

void printTypeAt(const Type& t, int minPrec, std::string& out) {
  bool paren = typePrec(t) < minPrec;
  if (paren) out += '(';
  switch (t.kind()) {
    case Type::Kind::Zero: out += '0'; break;
    case Type::Kind::One: out += '1'; break;
    case Type::Kind::Var: out += t.name(); break;
    case Type::Kind::Meta: out += "?" + std::to_string(t.metaId()); break;
    case Type::Kind::Mu:
      out += "mu " + t.name() + ". ";
      printTypeAt(t.body(), 0, out);
      break;
    case Type::Kind::Sum:
      printTypeAt(t.left(), 2, out);
      out += " + ";
      printTypeAt(t.right(), 1, out);
      break;
    case Type::Kind::Prod:
      printTypeAt(t.left(), 3, out);
      out += " * ";
      printTypeAt(t.right(), 2, out);
      break;
  }
  if (paren) out += ')';
}

void printValueInner(const Value& v, std::string& out);

void printConstructorArg(const Value& v, std::string& out) {
  if (v.kind() == Value::Kind::Unit || v.kind() == Value::Kind::Pair) {
    printValueInner(v, out);
  } else {
    out += '(';
    printValueInner(v, out);
    out += ')';
  }
}

void printValueInner(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Unit:
      out += "()";
      break;
    case Value::Kind::InL:
      out += "inl ";
      printConstructorArg(v.arg(), out);
      break;
    case Value::Kind::InR:
      out += "inr ";
      printConstructorArg(v.arg(), out);
      break;
    case Value::Kind::Fold:
      out += "fold ";
      printConstructorArg(v.arg(), out);
      break;
    case Value::Kind::Pair:
      out += '(';
      printValueInner(v.first(), out);
      out += ", ";
      printValueInner(v.second(), out);
      out += ')';
      break;
  }
}

int combPrec(const Combinator& c) {
  switch (c.kind()) {
    case Combinator::Kind::Comp: return 0;
    case Combinator::Kind::Sum: return 1;
    case Combinator::Kind::Prod: return 2;
    default: return 3;
  }
}

void printCombAt(const Combinator& c, int minPrec, std::string& out) {
  bool paren = combPrec(c) < minPrec;
  if (paren) out += '(';
  switch (c.kind()) {
    case Combinator::Kind::Basic:
      out += primName(c.prim());
      break;
    case Combinator::Kind::Fold:
      out += "fold[";
      printTypeAt(c.annotation(), 0, out);
      out += ']';
      break;
    case Combinator::Kind::Unfold:
      out += "unfold[";
      printTypeAt(c.annotation(), 0, out);
      out += ']';
      break;
    case Combinator::Kind::Comp:
      printCombAt(c.first(), 1, out);
      out += " ; ";
      printCombAt(c.second(), 0, out);
      break;
    case Combinator::Kind::Sum:
      printCombAt(c.first(), 2, out);
      out += " (+) ";
      printCombAt(c.second(), 1, out);
      break;
    case Combinator::Kind::Prod:
      printCombAt(c.first(), 3, out);
      out += " (*) ";
      printCombAt(c.second(), 2, out);
      break;
    case Combinator::Kind::Trace:
      out += "trace(";
      printCombAt(c.inner(), 0, out);
      out += ')';
      break;
    case Combinator::Kind::Inv:
      out += "inv(";
      printCombAt(c.inner(), 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

const Declaration* SourceProgram::find(const std::string& name) const {
  for (const auto& d : declarations)
    if (d.name == name) return &d;
  return nullptr;
}

const Declaration* SourceProgram::entryDeclaration() const {
  if (entry) return find(*entry);
  if (declarations.empty()) return nullptr;
  return &declarations.back();
}

Type parseType(const std::string& text) {
  Parser p(text);
  Type t = p.typeExpr();
  p.expectEnd();
  return t;
}

Combinator parseCombinator(const std::string& text) {
  Parser p(text);
  Combinator c = p.combExpr(nullptr);
  p.expectEnd();
  return c;
}

Value parseValue(const std::string& text) {
  Parser p(text);
  Value v = p.valueExpr();
  p.expectEnd();
  return v;
}

SourceProgram parseProgram(const std::string& text) {
  Parser p(text);
  return p.program();
}

std::string printType(const Type& t) {
  std::string out;
  printTypeAt(t, 0, out);
  return out;
}

std::string printValue(const Value& v) {
  std::string out;
  printValueInner(v, out);
  return out;
}

std::string printCombinator(const Combinator& c) {
  std::string out;
  printCombAt(c, 0, out);
  return out;
}

std::string printProgram(const SourceProgram& p) {
  std::ostringstream out;
  for (const auto& d : p.declarations) {
    out << d.name << " : ";
    if (d.ascription) {
      out << printType(d.ascription->first) << " <-> " << printType(d.ascription->second);
    } else {
      out << "? <-> ?";
    }
    out << " = " << printCombinator(d.body) << "\n";
  }
  if (p.entry) out << "main = " << *p.entry << "\n";
  return out.str();
}

}  // namespace pio
