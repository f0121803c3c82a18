#include <cctype>
#include <optional>
#include <vector>

#include "pairsat/error.hpp"
#include "pairsat/syntax.hpp"

namespace pairsat {

namespace {

enum class Tok {
  Ident,
  MapRef,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Eq,
  Neq,
  Arrow,
  DoubleArrow,
  KwForall,
  KwExists,
  KwIn,
  KwNotin,
  KwNot,
  KwAnd,
  KwOr,
  KwNonpairs,
  KwSub,
  KwDom,
  KwRan,
  KwImg,
  KwComp,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::optional<Tok> keyword(const std::string& s) {
  static const std::pair<const char*, Tok> table[] = {
      {"forall", Tok::KwForall}, {"exists", Tok::KwExists}, {"in", Tok::KwIn},
      {"notin", Tok::KwNotin},   {"not", Tok::KwNot},       {"and", Tok::KwAnd},
      {"or", Tok::KwOr},         {"nonpairs", Tok::KwNonpairs}, {"sub", Tok::KwSub},
      {"dom", Tok::KwDom},       {"ran", Tok::KwRan},       {"img", Tok::KwImg},
      {"comp", Tok::KwComp},
  };
  for (const auto& [word, tok] : table)
    if (s == word) return tok;
  return std::nullopt;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#' ||
         c == '$';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto read_ident = [&]() {
    std::size_t start = i;
    while (i < src.size() && ident_char(src[i])) advance(1);
    return std::string(src.substr(start, i - start));
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    auto push = [&](Tok t, std::string text, std::size_t n) {
      out.push_back({t, std::move(text), l, cl});
      advance(n);
    };
    switch (c) {
      case '(': push(Tok::LParen, "(", 1); continue;
      case ')': push(Tok::RParen, ")", 1); continue;
      case '[': push(Tok::LBracket, "[", 1); continue;
      case ']': push(Tok::RBracket, "]", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case '.': push(Tok::Dot, ".", 1); continue;
      case '=': push(Tok::Eq, "=", 1); continue;
      default: break;
    }
    if (src.substr(i, 2) == "!=") {
      push(Tok::Neq, "!=", 2);
    } else if (src.substr(i, 2) == "->") {
      push(Tok::Arrow, "->", 2);
    } else if (src.substr(i, 3) == "<->") {
      push(Tok::DoubleArrow, "<->", 3);
    } else if (c == '@') {
      advance(1);
      if (i >= src.size() || !ident_start(src[i]))
        throw ParseError("expected identifier after '@'", l, cl);
      std::string name = read_ident();
      if (keyword(name)) throw ParseError("keyword '" + name + "' used as map variable", l, cl);
      out.push_back({Tok::MapRef, name, l, cl});
    } else if (ident_start(c)) {
      std::string name = read_ident();
      if (auto kw = keyword(name))
        out.push_back({*kw, name, l, cl});
      else
        out.push_back({Tok::Ident, name, l, cl});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  out.push_back({Tok::End, "<end of input>", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().tok != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept(Tok::DoubleArrow)) f = Formula::iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::Arrow)) return Formula::implies(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::KwOr)) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::KwAnd)) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::KwNot)) return Formula::negation(parse_unary());
    if (peek().tok == Tok::KwForall || peek().tok == Tok::KwExists) return parse_quant();
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  Formula parse_quant() {
    const bool universal = next().tok == Tok::KwForall;
    if (accept(Tok::LBracket)) {
      Variable x = set_ident();
      expect(Tok::Comma, "','");
      Variable y = set_ident();
      expect(Tok::RBracket, "']'");
      expect(Tok::KwIn, "'in'");
      Variable c = container();
      expect(Tok::Dot, "'.'");
      Formula body = parse_iff();
      return universal ? Formula::forall_pair_in(x, y, c, body)
                       : Formula::exists_pair_in(x, y, c, body);
    }
    Variable x = set_ident();
    expect(Tok::KwIn, "'in'");
    if (accept(Tok::KwNonpairs)) {
      const Token& at = toks_[pos_ - 1];
      Variable d = paren_set_ident();
      expect(Tok::Dot, "'.'");
      Formula body = parse_iff();
      if (!universal)
        throw ParseError("existential quantification over nonpairs(...) is not supported", at.line,
                         at.column);
      return Formula::forall_in_nonpairs(x, d, body);
    }
    Variable d = set_ident();
    expect(Tok::Dot, "'.'");
    Formula body = parse_iff();
    return universal ? Formula::forall_in(x, d, body) : Formula::exists_in(x, d, body);
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.tok == Tok::LBracket) {
      next();
      Variable x = set_ident();
      expect(Tok::Comma, "','");
      Variable y = set_ident();
      expect(Tok::RBracket, "']'");
      bool negated = membership_op();
      Formula f = Formula::pair_member(x, y, container());
      return negated ? Formula::negation(f) : f;
    }
    if (t.tok == Tok::MapRef) {
      Variable f = Variable::map(next().text);
      if (peek().tok == Tok::Eq || peek().tok == Tok::Neq) {
        bool negated = next().tok == Tok::Neq;
        Variable g = map_ref();
        Formula eq = Formula::equal_map(f, g);
        return negated ? Formula::negation(eq) : eq;
      }
      if (accept(Tok::KwSub)) {
        expect(Tok::KwComp, "'comp'");
        expect(Tok::LParen, "'('");
        Variable a = map_ref();
        expect(Tok::Comma, "','");
        Variable b = map_ref();
        expect(Tok::RParen, "')'");
        return Formula::sub_comp(f, a, b);
      }
      throw SortError("map variable @" + f.name + " can only be compared with '=' or used in 'sub comp'",
                      t.line, t.column);
    }
    if (t.tok != Tok::Ident) fail("expected a formula, found '" + t.text + "'");
    Variable x = Variable::set(next().text);
    const Token& op = peek();
    if (op.tok == Tok::KwIn || op.tok == Tok::KwNotin) {
      bool negated = next().tok == Tok::KwNotin;
      Formula f = Formula::member(x, x);
      if (accept(Tok::KwNonpairs)) {
        f = Formula::member_nonpairs(x, paren_set_ident());
      } else {
        f = Formula::member(x, set_ident());
      }
      return negated ? Formula::negation(f) : f;
    }
    if (op.tok == Tok::Eq || op.tok == Tok::Neq) {
      bool negated = next().tok == Tok::Neq;
      Formula f = Formula::equal(x, set_ident());
      return negated ? Formula::negation(f) : f;
    }
    if (accept(Tok::KwSub)) {
      const Token& which = next();
      expect(Tok::LParen, "'('");
      Variable f = map_ref();
      Formula out = Formula::member(x, x);
      if (which.tok == Tok::KwDom) {
        out = Formula::sub_dom(x, f);
      } else if (which.tok == Tok::KwRan) {
        out = Formula::sub_range(x, f);
      } else if (which.tok == Tok::KwImg) {
        expect(Tok::Comma, "','");
        out = Formula::sub_image(x, f, set_ident());
      } else {
        throw ParseError("expected 'dom', 'ran' or 'img' after 'sub'", which.line, which.column);
      }
      expect(Tok::RParen, "')'");
      return out;
    }
    fail("expected 'in', 'notin', '=', '!=' or 'sub' after '" + x.name + "'");
  }

  bool membership_op() {
    if (accept(Tok::KwIn)) return false;
    if (accept(Tok::KwNotin)) return true;
    fail("expected 'in' or 'notin'");
  }

  Variable container() {
    if (peek().tok == Tok::MapRef) return Variable::map(next().text);
    return set_ident();
  }

  Variable set_ident() {
    const Token& t = peek();
    if (t.tok == Tok::MapRef)
      throw SortError("map variable @" + t.text + " used where a set variable is required", t.line,
                      t.column);
    if (t.tok != Tok::Ident) fail("expected set variable, found '" + t.text + "'");
    return Variable::set(next().text);
  }

  Variable paren_set_ident() {
    expect(Tok::LParen, "'('");
    Variable v = set_ident();
    expect(Tok::RParen, "')'");
    return v;
  }

  Variable map_ref() {
    const Token& t = peek();
    if (t.tok == Tok::Ident)
      throw SortError("set variable " + t.text + " used where a map variable is required", t.line,
                      t.column);
    if (t.tok != Tok::MapRef) fail("expected map variable, found '" + t.text + "'");
    return Variable::map(next().text);
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.tok != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok t) {
    if (peek().tok != t) return false;
    next();
    return true;
  }
  void expect(Tok t, const char* what) {
    if (!accept(t)) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).parse_all(); }

}  // namespace pairsat
