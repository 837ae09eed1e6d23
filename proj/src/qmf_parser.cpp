#include "fml2hol/qmf_parser.hpp"

#include <cctype>
#include <ostream>
#include <vector>

namespace fml2hol::qmf {

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : Error("line " + std::to_string(span.line) + ", column " + std::to_string(span.column) +
            ": expected " + expected + ", found " +
            (found.empty() ? std::string("end of input") : "'" + found + "'")),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  LowerWord,
  UpperWord,
  Integer,
  DollarWord,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Bang,
  Question,
  Tilde,
  Amp,
  Pipe,
  Implies,     // =>
  RevImplies,  // <=
  Iff,         // <=>
  Quoted,      // 'single quoted', only ever reported as unexpected
  BoxOp,       // #box
  DiaOp,       // #dia
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

// Raw lexeme; empty at end of input.
std::string describe(const Token& t) { return t.text; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blanks();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", {line_, col_, 0}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_blanks() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        SourceSpan start{line_, col_, 2};
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) throw ParseError(start, "'*/'", "");
        advance();
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token take(Tok kind, std::size_t len) {
    Token t{kind, std::string(src_.substr(pos_, len)), {line_, col_, static_cast<int>(len)}};
    for (std::size_t i = 0; i < len; ++i) advance();
    return t;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  Token next() {
    const char c = src_[pos_];
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '$' || std::isdigit(uc)) {
      std::size_t len = 1;
      while (pos_ + len < src_.size() && word_char(src_[pos_ + len])) ++len;
      Tok kind = c == '$'                ? Tok::DollarWord
                 : std::isdigit(uc)      ? Tok::Integer
                 : std::isupper(uc)      ? Tok::UpperWord
                                         : Tok::LowerWord;
      return take(kind, len);
    }
    if (c == '#') {
      std::size_t len = 1;
      while (pos_ + len < src_.size() && word_char(src_[pos_ + len])) ++len;
      std::string_view w = src_.substr(pos_, len);
      if (w == "#box") return take(Tok::BoxOp, len);
      if (w == "#dia") return take(Tok::DiaOp, len);
      throw ParseError({line_, col_, static_cast<int>(len)}, "'#box' or '#dia'",
                       std::string(w));
    }
    if (c == '\'') {
      const std::size_t end = src_.find('\'', pos_ + 1);
      const std::size_t nl = src_.find('\n', pos_ + 1);
      if (end == std::string_view::npos || end > nl)
        throw ParseError({line_, col_, 1}, "a closing quote", "'");
      return take(Tok::Quoted, end - pos_ + 1);
    }
    if (starts_with("<=>")) return take(Tok::Iff, 3);
    if (starts_with("<=")) return take(Tok::RevImplies, 2);
    if (starts_with("=>")) return take(Tok::Implies, 2);
    switch (c) {
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case '[': return take(Tok::LBracket, 1);
      case ']': return take(Tok::RBracket, 1);
      case ',': return take(Tok::Comma, 1);
      case '.': return take(Tok::Dot, 1);
      case ':': return take(Tok::Colon, 1);
      case '!': return take(Tok::Bang, 1);
      case '?': return take(Tok::Question, 1);
      case '~': return take(Tok::Tilde, 1);
      case '&': return take(Tok::Amp, 1);
      case '|': return take(Tok::Pipe, 1);
      default: break;
    }
    throw ParseError({line_, col_, 1}, "a token", std::string(1, c));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  fml::Problem problem() {
    fml::Problem p;
    while (peek().kind != Tok::End) p.units.push_back(unit());
    return p;
  }

  fml::Formula lone_formula() {
    auto f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& bump() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().span, expected, describe(peek()));
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return bump();
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    bump();
    return true;
  }

  fml::AnnotatedFormula unit() {
    const Token& head = peek();
    if (head.kind == Tok::LowerWord && head.text == "include")
      throw ParseError(head.span, "'qmf' (include directives are not supported)", describe(head));
    if (head.kind != Tok::LowerWord || head.text != "qmf") fail("'qmf'");
    bump();
    expect(Tok::LParen, "'('");
    if (peek().kind != Tok::LowerWord && peek().kind != Tok::Integer) fail("a unit name");
    std::string name = bump().text;
    expect(Tok::Comma, "','");
    const Token& role_tok = peek();
    if (role_tok.kind != Tok::LowerWord) fail("a role");
    auto role = fml::role_from_string(role_tok.text);
    if (!role)
      throw ParseError(role_tok.span, "one of axiom, hypothesis, definition, conjecture",
                       describe(role_tok));
    bump();
    expect(Tok::Comma, "','");
    fml::Formula f = formula();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return {std::move(name), *role, std::move(f)};
  }

  fml::Formula formula() {
    fml::Formula lhs = disjunction();
    switch (peek().kind) {
      case Tok::Implies:
        bump();
        return fml::Implies(lhs, formula());
      case Tok::RevImplies: {
        bump();
        fml::Formula rhs = formula();
        return fml::Implies(rhs, lhs);
      }
      case Tok::Iff: {
        bump();
        fml::Formula rhs = formula();
        return fml::And(fml::Implies(lhs, rhs), fml::Implies(rhs, lhs));
      }
      default:
        return lhs;
    }
  }

  fml::Formula disjunction() {
    fml::Formula f = conjunction();
    while (accept(Tok::Pipe)) f = fml::Or(f, conjunction());
    return f;
  }

  fml::Formula conjunction() {
    fml::Formula f = unary();
    while (accept(Tok::Amp)) f = fml::And(f, unary());
    return f;
  }

  fml::Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        bump();
        return fml::Not(unary());
      case Tok::BoxOp:
      case Tok::DiaOp: {
        const bool box = t.kind == Tok::BoxOp;
        bump();
        if (peek().kind == Tok::LParen)
          fail("':' (indexed modal operators are not supported)");
        expect(Tok::Colon, "':'");
        fml::Formula body = unary();
        return box ? fml::Box(body) : fml::Dia(body);
      }
      case Tok::Bang:
      case Tok::Question:
        return quantified();
      case Tok::LParen: {
        bump();
        fml::Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::LowerWord:
        return atom();
      default:
        fail("a formula");
    }
  }

  fml::Formula quantified() {
    const bool universal = bump().kind == Tok::Bang;
    expect(Tok::LBracket, "'['");
    std::vector<std::string> vars;
    do {
      vars.push_back(expect(Tok::UpperWord, "a variable").text);
    } while (accept(Tok::Comma));
    expect(Tok::RBracket, "']'");
    expect(Tok::Colon, "':'");
    fml::Formula body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = universal ? fml::Forall(*it, body) : fml::Exists(*it, body);
    return body;
  }

  fml::Formula atom() {
    std::string pred = bump().text;
    std::vector<fml::Term> args;
    if (accept(Tok::LParen)) args = term_list();
    return fml::Atom(std::move(pred), std::move(args));
  }

  std::vector<fml::Term> term_list() {
    std::vector<fml::Term> args;
    do {
      args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "',' or ')'");
    return args;
  }

  fml::Term term() {
    const Token& t = peek();
    if (t.kind == Tok::UpperWord) return fml::Var(bump().text);
    if (t.kind != Tok::LowerWord) fail("a term");
    std::string name = bump().text;
    if (accept(Tok::LParen)) return fml::Fun(std::move(name), term_list());
    return fml::Const(std::move(name));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print_formula_to(std::string& out, const fml::Formula& f);

void wrapped(std::string& out, const fml::Formula& f) {
  out += "( ";
  print_formula_to(out, f);
  out += " )";
}

void print_formula_to(std::string& out, const fml::Formula& f) {
  using K = fml::Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += print_term(f.args()[i]);
        }
        out += ')';
      }
      return;
    case K::Not:
      out += "~ ";
      wrapped(out, f.sub());
      return;
    case K::Box:
      out += "#box : ";
      wrapped(out, f.sub());
      return;
    case K::Dia:
      out += "#dia : ";
      wrapped(out, f.sub());
      return;
    case K::Forall:
    case K::Exists:
      out += f.kind() == K::Forall ? "! [" : "? [";
      out += f.name();
      out += "] : ";
      wrapped(out, f.sub());
      return;
    case K::And:
    case K::Or:
    case K::Implies:
      wrapped(out, f.lhs());
      out += f.kind() == K::And ? " & " : f.kind() == K::Or ? " | " : " => ";
      wrapped(out, f.rhs());
      return;
  }
}

}  // namespace

fml::Problem parse_problem(std::string_view text) {
  fml::Problem p = Parser(text).problem();
  fml::validate_problem(p);
  return p;
}

fml::Formula parse_formula(std::string_view text) { return Parser(text).lone_formula(); }

std::string print_term(const fml::Term& t) {
  if (t.kind() != fml::Term::Kind::Function) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    out += print_term(t.args()[i]);
  }
  return out + ")";
}

std::string print_formula(const fml::Formula& f) {
  std::string out;
  print_formula_to(out, f);
  return out;
}

std::string print_problem(const fml::Problem& problem) {
  std::string out;
  for (const auto& u : problem.units) {
    out += "qmf(" + u.name + "," + fml::to_string(u.role) + ",( ";
    print_formula_to(out, u.formula);
    out += " )).\n";
  }
  return out;
}

}  // namespace fml2hol::qmf

namespace fml2hol::fml {

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << qmf::print_term(t); }
std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << qmf::print_formula(f);
}

}  // namespace fml2hol::fml
