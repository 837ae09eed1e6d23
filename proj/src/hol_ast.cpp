#include "fml2hol/hol_ast.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fml2hol/thf_emitter.hpp"

namespace fml2hol::hol {

// Base types are interned so equality usually short-circuits on identity.
Type Type::o() {
  static const auto n = std::make_shared<const Node>(Node{Kind::O, nullptr, nullptr});
  return Type(n);
}
Type Type::i() {
  static const auto n = std::make_shared<const Node>(Node{Kind::I, nullptr, nullptr});
  return Type(n);
}
Type Type::mu() {
  static const auto n = std::make_shared<const Node>(Node{Kind::Mu, nullptr, nullptr});
  return Type(n);
}
Type Type::arrow(Type from, Type to) {
  return Type(std::make_shared<const Node>(Node{Kind::Arrow, from.node_, to.node_}));
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (!a.is_arrow()) return true;
  return a.from() == b.from() && a.to() == b.to();
}

Type rho() {
  static const Type r = Type::arrow(Type::i(), Type::o());
  return r;
}

Type curried(const std::vector<Type>& args, Type result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) result = Type::arrow(*it, result);
  return result;
}

Term Term::make(Kind k, std::string name, std::optional<Type> type, const Term* a,
                const Term* b) {
  return Term(std::make_shared<const Node>(Node{k, std::move(name), std::move(type),
                                                a ? a->node_ : nullptr,
                                                b ? b->node_ : nullptr}));
}

Term Const(std::string name, Type type) {
  return Term::make(Term::Kind::Const, std::move(name), std::move(type), nullptr, nullptr);
}
Term Var(std::string name, Type type) {
  return Term::make(Term::Kind::Var, std::move(name), std::move(type), nullptr, nullptr);
}
Term Lambda(std::string var, Type var_type, Term body) {
  return Term::make(Term::Kind::Lambda, std::move(var), std::move(var_type), &body, nullptr);
}
Term App(Term fun, Term arg) { return Term::make(Term::Kind::App, {}, std::nullopt, &fun, &arg); }
Term App(Term fun, const std::vector<Term>& args) {
  for (const auto& a : args) fun = App(fun, a);
  return fun;
}
Term Forall(std::string var, Type var_type, Term body) {
  return Term::make(Term::Kind::Forall, std::move(var), std::move(var_type), &body, nullptr);
}
Term Exists(std::string var, Type var_type, Term body) {
  return Term::make(Term::Kind::Exists, std::move(var), std::move(var_type), &body, nullptr);
}
Term Not(Term t) { return Term::make(Term::Kind::Not, {}, std::nullopt, &t, nullptr); }
Term Or(Term a, Term b) { return Term::make(Term::Kind::Or, {}, std::nullopt, &a, &b); }
Term And(Term a, Term b) { return Term::make(Term::Kind::And, {}, std::nullopt, &a, &b); }
Term Implies(Term a, Term b) { return Term::make(Term::Kind::Implies, {}, std::nullopt, &a, &b); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists:
      return a.name() == b.name() && a.type() == b.type() && a.body() == b.body();
    case Term::Kind::Not:
      return a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Unit Unit::sort_decl(std::string name, std::string symbol, Section s) {
  return Unit{std::move(name), UnitKind::SortDecl, std::move(symbol), std::nullopt, std::nullopt, s};
}
Unit Unit::type_decl(std::string name, std::string symbol, Type type, Section s) {
  return Unit{std::move(name), UnitKind::TypeDecl, std::move(symbol), std::move(type),
              std::nullopt, s};
}
Unit Unit::definition(std::string name, std::string symbol, Term body, Section s) {
  return Unit{std::move(name), UnitKind::Definition, std::move(symbol), std::nullopt,
              std::move(body), s};
}
Unit Unit::formula(std::string name, UnitKind kind, Term t, Section s) {
  return Unit{std::move(name), kind, {}, std::nullopt, std::move(t), s};
}

const Unit* Problem::find(std::string_view name) const {
  for (const auto& u : units)
    if (u.name == name) return &u;
  return nullptr;
}

namespace {

std::string show(const Type& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

std::string show(const Term& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

[[noreturn]] void mismatch(const Term& at, const Type& expected, const Type& found) {
  throw TypeError(TypeError::Kind::TypeMismatch, "type mismatch at '" + show(at) +
                                                     "': expected " + show(expected) +
                                                     ", found " + show(found));
}

struct Binding {
  const std::string* name;
  const Type* type;
};

Type type_in(const Term& t, const Context& ctx, std::vector<Binding>& scope) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (*it->name == t.name()) {
          if (!(*it->type == t.type())) mismatch(t, *it->type, t.type());
          return t.type();
        }
      }
      return t.type();
    }
    case Term::Kind::Const: {
      auto it = ctx.find(t.name());
      if (it == ctx.end())
        throw TypeError(TypeError::Kind::UnboundSymbol, "unbound symbol '" + t.name() + "'");
      if (!(it->second == t.type())) mismatch(t, it->second, t.type());
      return t.type();
    }
    case Term::Kind::App: {
      Type f = type_in(t.fun(), ctx, scope);
      Type a = type_in(t.arg(), ctx, scope);
      if (!f.is_arrow())
        throw TypeError(TypeError::Kind::TypeMismatch,
                        "type mismatch at '" + show(t) + "': '" + show(t.fun()) +
                            "' has non-function type " + show(f));
      if (!(f.from() == a)) mismatch(t.arg(), f.from(), a);
      return f.to();
    }
    case Term::Kind::Lambda: {
      scope.push_back({&t.name(), &t.type()});
      Type b = type_in(t.body(), ctx, scope);
      scope.pop_back();
      return Type::arrow(t.type(), b);
    }
    case Term::Kind::Forall:
    case Term::Kind::Exists: {
      scope.push_back({&t.name(), &t.type()});
      Type b = type_in(t.body(), ctx, scope);
      scope.pop_back();
      if (!(b == Type::o())) mismatch(t.body(), Type::o(), b);
      return Type::o();
    }
    case Term::Kind::Not: {
      Type b = type_in(t.operand(), ctx, scope);
      if (!(b == Type::o())) mismatch(t.operand(), Type::o(), b);
      return Type::o();
    }
    default: {
      Type l = type_in(t.lhs(), ctx, scope);
      if (!(l == Type::o())) mismatch(t.lhs(), Type::o(), l);
      Type r = type_in(t.rhs(), ctx, scope);
      if (!(r == Type::o())) mismatch(t.rhs(), Type::o(), r);
      return Type::o();
    }
  }
}

void collect(const Term& t, std::vector<std::string>& bound, std::set<std::string>& vars,
             std::set<std::string>* consts) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) vars.insert(t.name());
      return;
    case Term::Kind::Const:
      if (consts) consts->insert(t.name());
      return;
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists:
      bound.push_back(t.name());
      collect(t.body(), bound, vars, consts);
      bound.pop_back();
      return;
    case Term::Kind::Not:
      collect(t.operand(), bound, vars, consts);
      return;
    default:
      collect(t.lhs(), bound, vars, consts);
      collect(t.rhs(), bound, vars, consts);
      return;
  }
}

Term rebuild_binder(const Term& binder, std::string var, Term body) {
  switch (binder.kind()) {
    case Term::Kind::Lambda: return Lambda(std::move(var), binder.type(), std::move(body));
    case Term::Kind::Forall: return Forall(std::move(var), binder.type(), std::move(body));
    default: return Exists(std::move(var), binder.type(), std::move(body));
  }
}

Term rebuild_binary(const Term& t, Term l, Term r) {
  switch (t.kind()) {
    case Term::Kind::App: return App(std::move(l), std::move(r));
    case Term::Kind::Or: return Or(std::move(l), std::move(r));
    case Term::Kind::And: return And(std::move(l), std::move(r));
    default: return Implies(std::move(l), std::move(r));
  }
}

// Y -> Y1, Y2, ...; digits already at the end are replaced.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  for (int k = 1;; ++k) {
    std::string cand = stem + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

Term subst(const Term& t, const std::string& x, const Term& s, const std::set<std::string>& fv_s) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == x ? s : t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists: {
      if (t.name() == x) return t;
      std::set<std::string> fv_body = free_vars(t.body());
      if (!fv_body.count(x)) return t;
      if (fv_s.count(t.name())) {
        std::set<std::string> avoid = fv_s;
        avoid.insert(fv_body.begin(), fv_body.end());
        avoid.insert(x);
        std::string y = fresh_name(t.name(), avoid);
        Term renamed = subst(t.body(), t.name(), Var(y, t.type()), {y});
        return rebuild_binder(t, y, subst(renamed, x, s, fv_s));
      }
      return rebuild_binder(t, t.name(), subst(t.body(), x, s, fv_s));
    }
    case Term::Kind::Not:
      return Not(subst(t.operand(), x, s, fv_s));
    default:
      return rebuild_binary(t, subst(t.lhs(), x, s, fv_s), subst(t.rhs(), x, s, fv_s));
  }
}

Term replace_defined(const Term& t, const std::function<std::optional<Term>(const Term&)>& f) {
  switch (t.kind()) {
    case Term::Kind::Const:
      if (auto r = f(t)) return *r;
      return t;
    case Term::Kind::Var:
      return t;
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists:
      return rebuild_binder(t, t.name(), replace_defined(t.body(), f));
    case Term::Kind::Not:
      return Not(replace_defined(t.operand(), f));
    default:
      return rebuild_binary(t, replace_defined(t.lhs(), f), replace_defined(t.rhs(), f));
  }
}

using Frame = std::vector<std::pair<const std::string*, const std::string*>>;

bool alpha_in(const Term& a, const Term& b, Frame& frame) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Const:
      return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::Var: {
      if (!(a.type() == b.type())) return false;
      for (auto it = frame.rbegin(); it != frame.rend(); ++it) {
        const bool ha = *it->first == a.name();
        const bool hb = *it->second == b.name();
        if (ha || hb) return ha && hb;
      }
      return a.name() == b.name();
    }
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists: {
      if (!(a.type() == b.type())) return false;
      frame.emplace_back(&a.name(), &b.name());
      bool eq = alpha_in(a.body(), b.body(), frame);
      frame.pop_back();
      return eq;
    }
    case Term::Kind::Not:
      return alpha_in(a.operand(), b.operand(), frame);
    default:
      return alpha_in(a.lhs(), b.lhs(), frame) && alpha_in(a.rhs(), b.rhs(), frame);
  }
}

}  // namespace

Type type_of(const Term& term, const Context& context) {
  std::vector<Binding> scope;
  return type_in(term, context, scope);
}

Context check_problem(const Problem& problem) {
  Context ctx;
  int conjectures = 0;
  for (const auto& u : problem.units) {
    switch (u.kind) {
      case UnitKind::SortDecl:
        break;
      case UnitKind::TypeDecl: {
        auto [it, inserted] = ctx.emplace(u.symbol, *u.type);
        if (!inserted && !(it->second == *u.type))
          throw TypeError(TypeError::Kind::Redeclared,
                          "symbol '" + u.symbol + "' redeclared with a different type");
        break;
      }
      case UnitKind::Definition: {
        auto it = ctx.find(u.symbol);
        if (it == ctx.end())
          throw TypeError(TypeError::Kind::UnboundSymbol,
                          "definition of undeclared symbol '" + u.symbol + "'");
        if (!free_vars(*u.term).empty())
          throw TypeError(TypeError::Kind::OpenTerm, "definition of '" + u.symbol + "' is not closed");
        Type t = type_of(*u.term, ctx);
        if (!(t == it->second)) mismatch(*u.term, it->second, t);
        break;
      }
      default: {
        if (u.kind == UnitKind::Conjecture && ++conjectures > 1)
          throw TypeError(TypeError::Kind::MultipleConjectures, "more than one conjecture");
        if (!free_vars(*u.term).empty())
          throw TypeError(TypeError::Kind::OpenTerm, "unit '" + u.name + "' is not closed");
        Type t = type_of(*u.term, ctx);
        if (!(t == Type::o())) mismatch(*u.term, Type::o(), t);
        break;
      }
    }
  }
  return ctx;
}

std::set<std::string> free_vars(const Term& term) {
  std::vector<std::string> bound;
  std::set<std::string> vars;
  collect(term, bound, vars, nullptr);
  return vars;
}

std::set<std::string> constants(const Term& term) {
  std::vector<std::string> bound;
  std::set<std::string> vars, consts;
  collect(term, bound, vars, &consts);
  return consts;
}

Term substitute(const Term& term, const std::string& var, const Term& replacement) {
  return subst(term, var, replacement, free_vars(replacement));
}

Term beta_normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return t;
    case Term::Kind::App: {
      Term f = beta_normalize(t.fun());
      if (f.kind() == Term::Kind::Lambda)
        return beta_normalize(substitute(f.body(), f.name(), t.arg()));
      return App(f, beta_normalize(t.arg()));
    }
    case Term::Kind::Lambda:
    case Term::Kind::Forall:
    case Term::Kind::Exists:
      return rebuild_binder(t, t.name(), beta_normalize(t.body()));
    case Term::Kind::Not:
      return Not(beta_normalize(t.operand()));
    default:
      return rebuild_binary(t, beta_normalize(t.lhs()), beta_normalize(t.rhs()));
  }
}

Term expand_definitions(const Problem& problem, const Term& term) {
  std::unordered_map<std::string, Term> bodies;
  for (const auto& u : problem.units)
    if (u.kind == UnitKind::Definition) bodies.emplace(u.symbol, *u.term);

  std::unordered_map<std::string, Term> expanded;
  std::set<std::string> in_progress;
  std::function<Term(const std::string&)> expand_symbol;
  auto rewrite = [&](const Term& c) -> std::optional<Term> {
    if (!bodies.count(c.name())) return std::nullopt;
    return expand_symbol(c.name());
  };
  expand_symbol = [&](const std::string& name) -> Term {
    if (auto it = expanded.find(name); it != expanded.end()) return it->second;
    if (!in_progress.insert(name).second) throw CyclicDefinition(name);
    Term body = replace_defined(bodies.at(name), rewrite);
    in_progress.erase(name);
    expanded.emplace(name, body);
    return body;
  };
  return beta_normalize(replace_defined(term, rewrite));
}

bool alpha_equal(const Term& a, const Term& b) {
  Frame frame;
  return alpha_in(a, b, frame);
}

bool alpha_equal(const Unit& a, const Unit& b) {
  if (a.name != b.name || a.kind != b.kind || a.symbol != b.symbol) return false;
  if (a.type.has_value() != b.type.has_value()) return false;
  if (a.type && !(*a.type == *b.type)) return false;
  if (a.term.has_value() != b.term.has_value()) return false;
  return !a.term || alpha_equal(*a.term, *b.term);
}

bool alpha_equal(const Problem& a, const Problem& b) {
  if (a.units.size() != b.units.size()) return false;
  for (std::size_t i = 0; i < a.units.size(); ++i)
    if (!alpha_equal(a.units[i], b.units[i])) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const Type& t) { return os << thf::emit_type(t); }
std::ostream& operator<<(std::ostream& os, const Term& t) { return os << thf::emit_term(t); }

}  // namespace fml2hol::hol
