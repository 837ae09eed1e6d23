#include "thf_reader.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fml2hol::testing {

namespace {

std::vector<std::string> lex(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '\'') {
      const std::size_t end = s.find('\'', i + 1);
      if (end == std::string_view::npos) throw std::runtime_error("unterminated quote");
      out.emplace_back(s.substr(i, end - i + 1));
      i = end + 1;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.emplace_back(s.substr(i, j - i));
      i = j;
    } else if (s.substr(i, 2) == "=>") {
      out.emplace_back("=>");
      i += 2;
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

class Reader {
 public:
  Reader(std::vector<std::string> toks, hol::Context& ctx) : toks_(std::move(toks)), ctx_(ctx) {}

  bool at_end() const { return pos_ >= toks_.size(); }
  const std::string& peek() const {
    static const std::string eof = "<eof>";
    return at_end() ? eof : toks_[pos_];
  }
  std::string next() {
    if (at_end()) throw std::runtime_error("unexpected end of input");
    return toks_[pos_++];
  }
  void expect(const std::string& t) {
    if (peek() != t) throw std::runtime_error("expected '" + t + "', found '" + peek() + "'");
    ++pos_;
  }

  hol::Type type() {
    hol::Type left = atomic_type();
    if (peek() == ">") {
      next();
      return hol::Type::arrow(left, type());
    }
    return left;
  }

  hol::Term term() {
    hol::Term left = application();
    const std::string op = peek();
    if (op != "|" && op != "&" && op != "=>") return left;
    next();
    hol::Term right = application();
    if (op == "|") return hol::Or(left, right);
    if (op == "&") return hol::And(left, right);
    return hol::Implies(left, right);
  }

  std::vector<std::string> includes;

  // nullopt for an include directive; its path is appended to `includes`.
  std::optional<hol::Unit> unit(hol::Section section) {
    const std::string head = next();
    expect("(");
    if (head == "include") {
      std::string path = next();
      includes.push_back(path.substr(1, path.size() - 2));
      expect(")");
      expect(".");
      return std::nullopt;
    }
    if (head != "thf") throw std::runtime_error("unexpected '" + head + "'");
    std::string name = next();
    expect(",");
    const std::string kind = next();
    expect(",");
    expect("(");
    hol::Unit u;
    if (kind == "type") {
      std::string sym = next();
      expect(":");
      if (peek() == "$tType") {
        next();
        u = hol::Unit::sort_decl(name, sym, section);
      } else {
        hol::Type t = type();
        ctx_.insert_or_assign(sym, t);
        u = hol::Unit::type_decl(name, sym, t, section);
      }
    } else if (kind == "definition") {
      std::string sym = next();
      expect("=");
      expect("(");
      hol::Term body = term();
      expect(")");
      u = hol::Unit::definition(name, sym, body, section);
    } else {
      hol::UnitKind k;
      if (kind == "axiom")
        k = hol::UnitKind::Axiom;
      else if (kind == "hypothesis")
        k = hol::UnitKind::Hypothesis;
      else if (kind == "conjecture")
        k = hol::UnitKind::Conjecture;
      else
        throw std::runtime_error("unknown unit kind '" + kind + "'");
      u = hol::Unit::formula(name, k, term(), section);
    }
    expect(")");
    expect(")");
    expect(".");
    return u;
  }

 private:
  hol::Type atomic_type() {
    const std::string t = next();
    if (t == "$i") return hol::Type::i();
    if (t == "$o") return hol::Type::o();
    if (t == "mu") return hol::Type::mu();
    if (t == "(") {
      hol::Type inner = type();
      expect(")");
      return inner;
    }
    throw std::runtime_error("bad type token '" + t + "'");
  }

  hol::Term application() {
    hol::Term t = unitary();
    while (peek() == "@") {
      next();
      t = hol::App(t, unitary());
    }
    return t;
  }

  hol::Term unitary() {
    const std::string t = next();
    if (t == "(") {
      hol::Term inner = term();
      expect(")");
      return inner;
    }
    if (t == "~") return hol::Not(unitary());
    if (t == "^" || t == "!" || t == "?") {
      expect("[");
      std::vector<std::pair<std::string, hol::Type>> vars;
      while (true) {
        std::string v = next();
        expect(":");
        vars.emplace_back(v, type());
        if (peek() != ",") break;
        next();
      }
      expect("]");
      expect(":");
      for (const auto& [v, ty] : vars) bound_.emplace_back(v, ty);
      hol::Term body = unitary();
      for (std::size_t i = 0; i < vars.size(); ++i) bound_.pop_back();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        if (t == "^")
          body = hol::Lambda(it->first, it->second, body);
        else if (t == "!")
          body = hol::Forall(it->first, it->second, body);
        else
          body = hol::Exists(it->first, it->second, body);
      }
      return body;
    }
    if (std::isupper(static_cast<unsigned char>(t[0]))) {
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
        if (it->first == t) return hol::Var(t, it->second);
      throw std::runtime_error("unbound variable '" + t + "'");
    }
    if (std::islower(static_cast<unsigned char>(t[0]))) {
      auto it = ctx_.find(t);
      if (it == ctx_.end()) throw std::runtime_error("undeclared constant '" + t + "'");
      return hol::Const(t, it->second);
    }
    throw std::runtime_error("unexpected token '" + t + "'");
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
  hol::Context& ctx_;
  std::vector<std::pair<std::string, hol::Type>> bound_;
};

void read_into(std::string_view text, const std::map<std::string, std::string>& files,
               hol::Section section, hol::Context& ctx, hol::Problem& out) {
  Reader r(lex(text), ctx);
  while (!r.at_end()) {
    auto u = r.unit(section);
    if (u) {
      out.units.push_back(std::move(*u));
      continue;
    }
    const std::string& path = r.includes.back();
    auto it = files.find(path);
    if (it == files.end()) throw std::runtime_error("unresolved include '" + path + "'");
    const auto inc_section =
        r.includes.size() == 1 ? hol::Section::DomainAxioms : hol::Section::LogicAxioms;
    read_into(it->second, files, inc_section, ctx, out);
  }
}

}  // namespace

hol::Problem read_thf(std::string_view text, const std::map<std::string, std::string>& files) {
  hol::Problem p;
  hol::Context ctx;
  read_into(text, files, hol::Section::Problem, ctx, p);
  return p;
}

hol::Problem read_emitted(const thf::EmittedOutput& output) {
  std::map<std::string, std::string> files;
  for (const auto& f : output.axiom_files) files[f.path] = f.text;
  return read_thf(output.problem_text, files);
}

}  // namespace fml2hol::testing
