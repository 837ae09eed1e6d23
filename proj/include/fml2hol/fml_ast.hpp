#pragma once

// First-order modal logic: terms, formulas, annotated units, problems and
// signatures. All values are immutable and cheap to copy (shared nodes).

#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fml2hol/error.hpp"

namespace fml2hol::fml {

class Term {
 public:
  enum class Kind { Variable, Constant, Function };

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  // Empty unless kind() == Function.
  const std::vector<Term>& args() const { return node_->args; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend Term Var(std::string);
  friend Term Const(std::string);
  friend Term Fun(std::string, std::vector<Term>);
};

// Variables start with an uppercase letter, constants and functions with a
// lowercase one (TPTP convention). Fun requires at least one argument.
Term Var(std::string name);
Term Const(std::string name);
Term Fun(std::string name, std::vector<Term> args);

class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Box, Dia, Forall, Exists };

  Kind kind() const { return node_->kind; }
  // Predicate symbol for atoms, bound variable for quantifiers.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  // Operand of Not/Box/Dia, body of a quantifier, left side of a binary.
  Formula sub() const { return Formula(node_->lhs); }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool is_binary() const {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
  }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  static Formula make(Kind k, std::string name, std::vector<Term> args,
                      const Formula* lhs, const Formula* rhs);

  friend Formula Atom(std::string, std::vector<Term>);
  friend Formula Not(Formula);
  friend Formula And(Formula, Formula);
  friend Formula Or(Formula, Formula);
  friend Formula Implies(Formula, Formula);
  friend Formula Box(Formula);
  friend Formula Dia(Formula);
  friend Formula Forall(std::string, Formula);
  friend Formula Exists(std::string, Formula);
};

Formula Atom(std::string pred, std::vector<Term> args = {});
Formula Not(Formula f);
Formula And(Formula a, Formula b);
Formula Or(Formula a, Formula b);
Formula Implies(Formula a, Formula b);
Formula Box(Formula f);
Formula Dia(Formula f);
Formula Forall(std::string var, Formula body);
Formula Exists(std::string var, Formula body);

enum class Role { Axiom, Hypothesis, Definition, Conjecture };

const char* to_string(Role r);
std::optional<Role> role_from_string(std::string_view s);

struct AnnotatedFormula {
  std::string name;
  Role role = Role::Axiom;
  Formula formula;

  friend bool operator==(const AnnotatedFormula&, const AnnotatedFormula&) = default;
};

struct Problem {
  std::vector<AnnotatedFormula> units;

  // nullptr when the problem has no conjecture.
  const AnnotatedFormula* conjecture() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

struct Symbol {
  std::string name;
  int arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Symbols in order of first occurrence.
struct Signature {
  std::vector<Symbol> predicates;
  std::vector<Symbol> functions;  // arity >= 1
  std::vector<std::string> constants;

  std::optional<int> predicate_arity(std::string_view name) const;
  std::optional<int> function_arity(std::string_view name) const;
  bool has_constant(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

class ValidationError : public Error {
 public:
  enum class Kind { ArityClash, SortClash, FreeVariable, MultipleConjectures };

  ValidationError(Kind kind, std::string symbol, std::string unit, std::string message)
      : Error(std::move(message)), kind_(kind), symbol_(std::move(symbol)), unit_(std::move(unit)) {}

  Kind kind() const { return kind_; }
  // Offending symbol or variable, empty for MultipleConjectures.
  const std::string& symbol() const { return symbol_; }
  const std::string& unit() const { return unit_; }

 private:
  Kind kind_;
  std::string symbol_;
  std::string unit_;
};

// Throws ValidationError (ArityClash, SortClash).
Signature collect_signature(const Problem& problem);
// Same walk restricted to one formula.
Signature collect_signature(const Formula& formula);

std::set<std::string> free_vars(const Formula& formula);
std::set<std::string> free_vars(const Term& term);

// At most one conjecture, every unit closed, signature consistent.
void validate_problem(const Problem& problem);

// Number of nested connective/modality/quantifier levels above atoms.
int depth(const Formula& formula);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace fml2hol::fml
