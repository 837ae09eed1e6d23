#include "fml2hol/thf_emitter.hpp"

#include <cctype>

namespace fml2hol::thf {

using hol::Term;
using hol::Type;

std::string emit_type(const Type& type) {
  switch (type.kind()) {
    case Type::Kind::O: return "$o";
    case Type::Kind::I: return "$i";
    case Type::Kind::Mu: return "mu";
    case Type::Kind::Arrow: {
      std::string from = emit_type(type.from());
      if (type.from().is_arrow()) from = "( " + from + " )";
      return from + " > " + emit_type(type.to());
    }
  }
  return "?";
}

namespace {

std::string operand(const Term& t) {
  if (t.is_atomic()) return t.name();
  return "( " + emit_term(t) + " )";
}

// `~` binds tighter than any binary connective, so a negated side stays bare.
std::string binary_operand(const Term& t) {
  return t.kind() == Term::Kind::Not ? emit_term(t) : operand(t);
}

std::string binder_symbol(Term::Kind k) {
  switch (k) {
    case Term::Kind::Lambda: return "^";
    case Term::Kind::Forall: return "!";
    default: return "?";
  }
}

std::string binary_symbol(Term::Kind k) {
  switch (k) {
    case Term::Kind::Or: return "|";
    case Term::Kind::And: return "&";
    default: return "=>";
  }
}

}  // namespace

std::string emit_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return t.name();
    case Term::Kind::App: {
      std::vector<Term> args;
      Term head = t;
      while (head.kind() == Term::Kind::App) {
        args.push_back(head.arg());
        head = head.fun();
      }
      std::string out = operand(head);
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        out += " @ ";
        // A trailing lambda needs no parentheses: its body extends to the end anyway.
        if (it + 1 == args.rend() && it->kind() == Term::Kind::Lambda)
          out += emit_term(*it);
        else
          out += operand(*it);
      }
      return out;
    }
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists: {
      std::string out = binder_symbol(t.kind()) + " [";
      Term cur = t;
      bool first = true;
      while (cur.kind() == t.kind()) {
        if (!first) out += ", ";
        first = false;
        out += cur.name() + ": " + emit_type(cur.type());
        cur = cur.body();
      }
      out += "] : ";
      out += cur.is_binder() ? emit_term(cur) : operand(cur);
      return out;
    }
    case Term::Kind::Not:
      return "~ " + operand(t.operand());
    default:
      return binary_operand(t.lhs()) + " " + binary_symbol(t.kind()) + " " + binary_operand(t.rhs());
  }
}

namespace {

const char* kind_keyword(hol::UnitKind k) {
  switch (k) {
    case hol::UnitKind::SortDecl:
    case hol::UnitKind::TypeDecl: return "type";
    case hol::UnitKind::Definition: return "definition";
    case hol::UnitKind::Axiom: return "axiom";
    case hol::UnitKind::Hypothesis: return "hypothesis";
    case hol::UnitKind::Conjecture: return "conjecture";
  }
  return "axiom";
}

// Breaks at spaces outside quotes; the token stream is unchanged.
std::string wrap(const std::string& line, int column) {
  if (column <= 0 || static_cast<int>(line.size()) <= column) return line;
  const std::string indent = "    ";
  std::string out;
  std::size_t last_break = std::string::npos;
  bool quoted = false;
  std::string current;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\'') quoted = !quoted;
    if (c == ' ' && !quoted) last_break = current.size();
    current += c;
    if (static_cast<int>(current.size()) > column && last_break != std::string::npos &&
        last_break > indent.size()) {
      out += current.substr(0, last_break) + "\n";
      current = indent + current.substr(last_break + 1);
      last_break = std::string::npos;
    }
  }
  return out + current;
}

}  // namespace

std::string emit_unit(const hol::Unit& unit, int wrap_column) {
  std::string payload;
  switch (unit.kind) {
    case hol::UnitKind::SortDecl:
      payload = unit.symbol + ": $tType";
      break;
    case hol::UnitKind::TypeDecl:
      payload = unit.symbol + ": " + emit_type(*unit.type);
      break;
    case hol::UnitKind::Definition:
      payload = unit.symbol + " = ( " + emit_term(*unit.term) + " )";
      break;
    default:
      payload = emit_term(*unit.term);
      break;
  }
  return wrap("thf(" + unit.name + "," + kind_keyword(unit.kind) + ",( " + payload + " )).",
              wrap_column) +
         "\n";
}

EmittedOutput emit_problem(const hol::Problem& problem, const EmissionMode& mode,
                           const EmitOptions& options) {
  EmittedOutput out;
  if (std::holds_alternative<InlineMode>(mode)) {
    for (const auto& u : problem.units) out.problem_text += emit_unit(u, options.wrap_column);
    return out;
  }

  const auto& inc = std::get<IncludeMode>(mode);
  const std::string domain = problem.domain_tag.empty() ? "domain" : problem.domain_tag;
  const std::string logic = problem.logic_tag.empty() ? "logic" : problem.logic_tag;
  const std::string prefix = inc.axiom_dir.empty() ? "" : inc.axiom_dir + "/";
  EmittedFile domain_file{prefix + inc.basename + "_" + domain + ".ax", ""};
  EmittedFile logic_file{prefix + inc.basename + "_" + logic + ".ax", ""};
  std::string body;
  for (const auto& u : problem.units) {
    std::string text = emit_unit(u, options.wrap_column);
    switch (u.section) {
      case hol::Section::DomainAxioms: domain_file.text += text; break;
      case hol::Section::LogicAxioms: logic_file.text += text; break;
      case hol::Section::Problem: body += text; break;
    }
  }
  for (auto* f : {&domain_file, &logic_file}) {
    if (f->text.empty()) continue;
    out.problem_text += "include('" + f->path + "').\n";
    out.axiom_files.push_back(std::move(*f));
  }
  out.problem_text += body;
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto word = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (word(c)) {
      std::size_t j = i;
      while (j < text.size() && word(text[j])) ++j;
      out.emplace_back(text.substr(i, j - i));
      i = j;
    } else if (c == '\'') {
      std::size_t j = text.find('\'', i + 1);
      j = j == std::string_view::npos ? text.size() : j + 1;
      out.emplace_back(text.substr(i, j - i));
      i = j;
    } else {
      std::size_t len = 1;
      for (std::string_view op : {"<=>", "<~>", "=>", "<=", "!=", "~|", "~&"}) {
        if (text.substr(i).starts_with(op)) {
          len = op.size();
          break;
        }
      }
      out.emplace_back(text.substr(i, len));
      i += len;
    }
  }
  return out;
}

}  // namespace fml2hol::thf
