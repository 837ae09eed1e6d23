#include "fml2hol/fml_ast.hpp"

#include <algorithm>
#include <cctype>

namespace fml2hol::fml {

namespace {

bool upper_initial(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front()));
}

bool lower_initial(std::string_view s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s.front()));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

}  // namespace

Term Var(std::string name) {
  require(upper_initial(name), "variable name must start with an uppercase letter: '" + name + "'");
  return Term(std::make_shared<const Term::Node>(Term::Node{Term::Kind::Variable, std::move(name), {}}));
}

Term Const(std::string name) {
  require(lower_initial(name), "constant name must start with a lowercase letter: '" + name + "'");
  return Term(std::make_shared<const Term::Node>(Term::Node{Term::Kind::Constant, std::move(name), {}}));
}

Term Fun(std::string name, std::vector<Term> args) {
  require(lower_initial(name), "function name must start with a lowercase letter: '" + name + "'");
  require(!args.empty(), "function application '" + name + "' needs at least one argument");
  return Term(std::make_shared<const Term::Node>(
      Term::Node{Term::Kind::Function, std::move(name), std::move(args)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.args() == b.args();
}

Formula Formula::make(Kind k, std::string name, std::vector<Term> args, const Formula* lhs,
                      const Formula* rhs) {
  return Formula(std::make_shared<const Node>(Node{k, std::move(name), std::move(args),
                                                   lhs ? lhs->node_ : nullptr,
                                                   rhs ? rhs->node_ : nullptr}));
}

Formula Atom(std::string pred, std::vector<Term> args) {
  require(lower_initial(pred), "predicate name must start with a lowercase letter: '" + pred + "'");
  return Formula::make(Formula::Kind::Atom, std::move(pred), std::move(args), nullptr, nullptr);
}
Formula Not(Formula f) { return Formula::make(Formula::Kind::Not, {}, {}, &f, nullptr); }
Formula And(Formula a, Formula b) { return Formula::make(Formula::Kind::And, {}, {}, &a, &b); }
Formula Or(Formula a, Formula b) { return Formula::make(Formula::Kind::Or, {}, {}, &a, &b); }
Formula Implies(Formula a, Formula b) {
  return Formula::make(Formula::Kind::Implies, {}, {}, &a, &b);
}
Formula Box(Formula f) { return Formula::make(Formula::Kind::Box, {}, {}, &f, nullptr); }
Formula Dia(Formula f) { return Formula::make(Formula::Kind::Dia, {}, {}, &f, nullptr); }
Formula Forall(std::string var, Formula body) {
  require(upper_initial(var), "bound variable must start with an uppercase letter: '" + var + "'");
  return Formula::make(Formula::Kind::Forall, std::move(var), {}, &body, nullptr);
}
Formula Exists(std::string var, Formula body) {
  require(upper_initial(var), "bound variable must start with an uppercase letter: '" + var + "'");
  return Formula::make(Formula::Kind::Exists, std::move(var), {}, &body, nullptr);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.name() == b.name() && a.args() == b.args();
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Dia:
      return a.sub() == b.sub();
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return a.name() == b.name() && a.sub() == b.sub();
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

const char* to_string(Role r) {
  switch (r) {
    case Role::Axiom: return "axiom";
    case Role::Hypothesis: return "hypothesis";
    case Role::Definition: return "definition";
    case Role::Conjecture: return "conjecture";
  }
  return "?";
}

std::optional<Role> role_from_string(std::string_view s) {
  if (s == "axiom") return Role::Axiom;
  if (s == "hypothesis") return Role::Hypothesis;
  if (s == "definition") return Role::Definition;
  if (s == "conjecture") return Role::Conjecture;
  return std::nullopt;
}

const AnnotatedFormula* Problem::conjecture() const {
  for (const auto& u : units)
    if (u.role == Role::Conjecture) return &u;
  return nullptr;
}

namespace {

std::optional<int> find_arity(const std::vector<Symbol>& syms, std::string_view name) {
  for (const auto& s : syms)
    if (s.name == name) return s.arity;
  return std::nullopt;
}

class SignatureBuilder {
 public:
  explicit SignatureBuilder(std::string unit) : unit_(std::move(unit)) {}

  void set_unit(std::string unit) { unit_ = std::move(unit); }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        predicate(f.name(), static_cast<int>(f.args().size()));
        for (const auto& t : f.args()) term(t);
        return;
      case Formula::Kind::Not:
      case Formula::Kind::Box:
      case Formula::Kind::Dia:
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        formula(f.sub());
        return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        formula(f.lhs());
        formula(f.rhs());
        return;
    }
  }

  Signature take() { return std::move(sig_); }

 private:
  void term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Variable:
        return;
      case Term::Kind::Constant:
        individual(t.name(), 0);
        return;
      case Term::Kind::Function:
        individual(t.name(), static_cast<int>(t.args().size()));
        for (const auto& a : t.args()) term(a);
        return;
    }
  }

  void predicate(const std::string& name, int arity) {
    if (find_arity(sig_.functions, name) || sig_.has_constant(name))
      sort_clash(name);
    if (auto a = find_arity(sig_.predicates, name)) {
      if (*a != arity) arity_clash(name, *a, arity);
      return;
    }
    sig_.predicates.push_back({name, arity});
  }

  void individual(const std::string& name, int arity) {
    if (find_arity(sig_.predicates, name)) sort_clash(name);
    std::optional<int> known = find_arity(sig_.functions, name);
    if (!known && sig_.has_constant(name)) known = 0;
    if (known) {
      if (*known != arity) arity_clash(name, *known, arity);
      return;
    }
    if (arity == 0)
      sig_.constants.push_back(name);
    else
      sig_.functions.push_back({name, arity});
  }

  [[noreturn]] void sort_clash(const std::string& name) const {
    throw ValidationError(ValidationError::Kind::SortClash, name, unit_,
                          "symbol '" + name + "' is used both as a predicate and as a term");
  }

  [[noreturn]] void arity_clash(const std::string& name, int a1, int a2) const {
    throw ValidationError(ValidationError::Kind::ArityClash, name, unit_,
                          "symbol '" + name + "' is used with arities " + std::to_string(a1) +
                              " and " + std::to_string(a2));
  }

  std::string unit_;
  Signature sig_;
};

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      return;
    case Term::Kind::Constant:
      return;
    case Term::Kind::Function:
      for (const auto& a : t.args()) collect_free(a, bound, out);
      return;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) collect_free(t, bound, out);
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Dia:
      collect_free(f.sub(), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.name());
      collect_free(f.sub(), bound, out);
      bound.pop_back();
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
  }
}

}  // namespace

std::optional<int> Signature::predicate_arity(std::string_view name) const {
  return find_arity(predicates, name);
}

std::optional<int> Signature::function_arity(std::string_view name) const {
  return find_arity(functions, name);
}

bool Signature::has_constant(std::string_view name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

Signature collect_signature(const Problem& problem) {
  SignatureBuilder builder("");
  for (const auto& u : problem.units) {
    builder.set_unit(u.name);
    builder.formula(u.formula);
  }
  return builder.take();
}

Signature collect_signature(const Formula& formula) {
  SignatureBuilder builder("");
  builder.formula(formula);
  return builder.take();
}

std::set<std::string> free_vars(const Formula& formula) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(formula, bound, out);
  return out;
}

std::set<std::string> free_vars(const Term& term) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(term, bound, out);
  return out;
}

void validate_problem(const Problem& problem) {
  int conjectures = 0;
  for (const auto& u : problem.units) {
    if (u.role == Role::Conjecture && ++conjectures > 1)
      throw ValidationError(ValidationError::Kind::MultipleConjectures, "", u.name,
                            "problem has more than one conjecture (second: '" + u.name + "')");
    auto fv = free_vars(u.formula);
    if (!fv.empty())
      throw ValidationError(ValidationError::Kind::FreeVariable, *fv.begin(), u.name,
                            "unit '" + u.name + "' has free variable " + *fv.begin());
  }
  collect_signature(problem);
}

int depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
    default:
      return 1 + depth(f.sub());
  }
}

}  // namespace fml2hol::fml
