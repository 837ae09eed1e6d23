#pragma once

// Simply typed lambda terms over the base types $o (truth values), $i
// (worlds) and mu (individuals). Connectives and quantifiers are primitive
// constructors, as in thf0.

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fml2hol/error.hpp"

namespace fml2hol::hol {

class Type {
 public:
  enum class Kind { O, I, Mu, Arrow };

  static Type o();
  static Type i();
  static Type mu();
  static Type arrow(Type from, Type to);

  Kind kind() const { return node_->kind; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  // Only for arrows.
  Type from() const { return Type(node_->from); }
  Type to() const { return Type(node_->to); }

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const Node> from;
    std::shared_ptr<const Node> to;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// $i > $o, the type of lifted propositions.
Type rho();
// args[0] > args[1] > ... > result
Type curried(const std::vector<Type>& args, Type result);

class Term {
 public:
  enum class Kind { Const, Var, Lambda, App, Forall, Exists, Not, Or, And, Implies };

  Kind kind() const { return node_->kind; }
  // Symbol for Const/Var, bound variable for Lambda/Forall/Exists.
  const std::string& name() const { return node_->name; }
  // Declared type for Const/Var, bound variable type for binders.
  const Type& type() const { return *node_->type; }

  Term body() const { return Term(node_->a); }     // binders
  Term fun() const { return Term(node_->a); }      // App
  Term arg() const { return Term(node_->b); }      // App
  Term operand() const { return Term(node_->a); }  // Not
  Term lhs() const { return Term(node_->a); }      // Or/And/Implies
  Term rhs() const { return Term(node_->b); }      // Or/And/Implies

  bool is_binder() const {
    return kind() == Kind::Lambda || kind() == Kind::Forall || kind() == Kind::Exists;
  }
  bool is_binary() const {
    return kind() == Kind::Or || kind() == Kind::And || kind() == Kind::Implies;
  }
  bool is_atomic() const { return kind() == Kind::Const || kind() == Kind::Var; }

  // Exact structural equality, bound names included. See alpha_equal.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::optional<Type> type;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Kind k, std::string name, std::optional<Type> type, const Term* a,
                   const Term* b);

  std::shared_ptr<const Node> node_;

  friend Term Const(std::string, Type);
  friend Term Var(std::string, Type);
  friend Term Lambda(std::string, Type, Term);
  friend Term App(Term, Term);
  friend Term Forall(std::string, Type, Term);
  friend Term Exists(std::string, Type, Term);
  friend Term Not(Term);
  friend Term Or(Term, Term);
  friend Term And(Term, Term);
  friend Term Implies(Term, Term);
};

Term Const(std::string name, Type type);
Term Var(std::string name, Type type);
Term Lambda(std::string var, Type var_type, Term body);
Term App(Term fun, Term arg);
// fun @ args[0] @ args[1] ...
Term App(Term fun, const std::vector<Term>& args);
Term Forall(std::string var, Type var_type, Term body);
Term Exists(std::string var, Type var_type, Term body);
Term Not(Term t);
Term Or(Term a, Term b);
Term And(Term a, Term b);
Term Implies(Term a, Term b);

enum class UnitKind { SortDecl, TypeDecl, Definition, Axiom, Hypothesis, Conjecture };

// Where a unit lives when the problem is split into axiom files.
enum class Section { DomainAxioms, LogicAxioms, Problem };

struct Unit {
  std::string name;
  UnitKind kind = UnitKind::Axiom;
  std::string symbol;         // SortDecl, TypeDecl, Definition
  std::optional<Type> type;   // TypeDecl
  std::optional<Term> term;   // Definition body, or the formula of an axiom/conjecture
  Section section = Section::Problem;

  static Unit sort_decl(std::string name, std::string symbol, Section s);
  static Unit type_decl(std::string name, std::string symbol, Type type, Section s);
  static Unit definition(std::string name, std::string symbol, Term body, Section s);
  static Unit formula(std::string name, UnitKind kind, Term t, Section s);

  bool is_formula() const {
    return kind == UnitKind::Axiom || kind == UnitKind::Hypothesis ||
           kind == UnitKind::Conjecture;
  }
};

struct Problem {
  std::vector<Unit> units;
  // Lowercase logic name ("d", "s5") and domain name ("const", "vary",
  // "cumul") the problem was generated for; empty if unknown.
  std::string logic_tag;
  std::string domain_tag;

  const Unit* find(std::string_view name) const;
};

using Context = std::map<std::string, Type, std::less<>>;

class TypeError : public Error {
 public:
  enum class Kind { TypeMismatch, UnboundSymbol, OpenTerm, Redeclared, MultipleConjectures };

  TypeError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class CyclicDefinition : public Error {
 public:
  explicit CyclicDefinition(std::string symbol)
      : Error("cyclic definition of '" + symbol + "'"), symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

// Constants must be in `context`; free variables use their own annotation.
// Throws TypeError.
Type type_of(const Term& term, const Context& context = {});

// Checks every unit in order: declarations before use, definition bodies
// closed and of the declared type, formulas of type $o. Returns the final
// symbol context. Throws TypeError.
Context check_problem(const Problem& problem);

std::set<std::string> free_vars(const Term& term);
std::set<std::string> constants(const Term& term);

// Capture-avoiding substitution of `replacement` for free occurrences of `var`.
Term substitute(const Term& term, const std::string& var, const Term& replacement);

Term beta_normalize(const Term& term);

// Unfolds every constant defined by a Definition unit, then beta-normalizes.
// Throws CyclicDefinition.
Term expand_definitions(const Problem& problem, const Term& term);

bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Unit& a, const Unit& b);
bool alpha_equal(const Problem& a, const Problem& b);

std::ostream& operator<<(std::ostream& os, const Type& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace fml2hol::hol
