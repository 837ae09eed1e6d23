#pragma once

// Finite Kripke models: truth of modal formulas, truth of the translated
// higher-order terms, frame and domain checks, bounded countermodel search.

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fml2hol/embedding.hpp"
#include "fml2hol/error.hpp"
#include "fml2hol/fml_ast.hpp"
#include "fml2hol/hol_ast.hpp"

namespace fml2hol::kripke {

using embed::DomainCondition;
using embed::FrameProperty;
using embed::Logic;
using embed::TranslationConfig;

// Rigid: one table for all worlds.
struct Function {
  int arity = 1;
  std::vector<int> table;  // indexed by KripkeModel::tuple_index

  friend bool operator==(const Function&, const Function&) = default;
};

struct Predicate {
  int arity = 0;
  std::vector<std::vector<bool>> extension;  // [world][tuple_index]

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Worlds and individuals are dense indices; the name vectors only matter for
// printing. Predicates missing from `preds` are false everywhere.
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::string> universe;
  std::vector<std::vector<bool>> rel;  // rel[w][v]: v is accessible from w
  std::vector<std::vector<bool>> dom;  // dom[w][x]: x exists in w
  std::map<std::string, int, std::less<>> consts;
  std::map<std::string, Function, std::less<>> funcs;
  std::map<std::string, Predicate, std::less<>> preds;

  // Worlds w1..wn, individuals a, b, ...; empty relation, full domains.
  static KripkeModel make(int num_worlds, int num_individuals);

  int num_worlds() const { return static_cast<int>(worlds.size()); }
  int num_individuals() const { return static_cast<int>(universe.size()); }

  std::size_t tuple_index(std::span<const int> args) const;
  std::size_t tuple_count(int arity) const;

  // Adds an all-false predicate / constant-zero function / constant `a`.
  void declare(const fml::Signature& signature);

  bool holds(std::string_view pred, int world, std::span<const int> args) const;
  int apply(std::string_view fn, std::span<const int> args) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

using Assignment = std::map<std::string, int, std::less<>>;

class EvalError : public Error {
 public:
  enum class Kind { UnboundVariable, UnknownSymbol, ArityMismatch, NonFiniteType, NotAValue };

  EvalError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Quantifiers range over dom(world). With DomainCondition::Constant they
// range over the whole universe instead. Atoms are evaluated over the full
// universe regardless of domains.
bool eval_fml(const KripkeModel& model, int world, const fml::Formula& formula,
              const Assignment& assignment = {},
              DomainCondition quantifier_range = DomainCondition::Varying);

// Free variables of type $i are bound to worlds, of type mu to individuals.
using HolEnvironment = std::map<std::string, int, std::less<>>;

struct HolValue {
  enum class Kind { Truth, World, Individual };
  Kind kind = Kind::Truth;
  bool truth = false;
  int index = 0;
};

// rel_<tag> reads rel, exists_in_world reads dom, user symbols read
// consts/funcs/preds. Quantifiers over mu range over the universe, over $i
// over the worlds; any other quantified type is rejected. Function-typed
// subterms are evaluated as closures, so definitions need not be expanded
// for the term to be evaluable as long as no defined constant remains.
HolValue eval_hol(const KripkeModel& model, const hol::Term& term,
                  const HolEnvironment& env = {});
// As eval_hol, for a term of type $o.
bool eval_hol_truth(const KripkeModel& model, const hol::Term& term,
                    const HolEnvironment& env = {});

bool has_property(const KripkeModel& model, FrameProperty p);
std::vector<FrameProperty> frame_violations(const KripkeModel& model, Logic logic);
bool check_frame(const KripkeModel& model, Logic logic);

// Human-readable violations, e.g. "non-emptiness violated at w2".
std::vector<std::string> domain_violations(const KripkeModel& model, DomainCondition domain);
bool check_domains(const KripkeModel& model, DomainCondition domain);

struct SearchBounds {
  int max_worlds = 3;
  int max_individuals = 3;
  std::optional<std::chrono::milliseconds> time_budget;
};

struct SearchResult {
  enum class Status { Countermodel, NoCountermodelWithinBounds, Timeout };
  Status status = Status::NoCountermodelWithinBounds;
  std::optional<KripkeModel> model;
  int world = 0;  // witness world of a countermodel
  long long candidates = 0;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

// Enumerates models by increasing worlds, then individuals, then relation,
// domains, constants, functions and predicate extensions. Relations are
// restricted to one representative per isomorphism class. Returns the first
// model satisfying the frame and domain conditions and every non-conjecture
// unit at every world in which the conjecture fails at some world.
// Throws SearchError if the problem has no conjecture.
SearchResult find_countermodel(const fml::Problem& problem, const TranslationConfig& config,
                               const SearchBounds& bounds);

// Everything wrong with a claimed countermodel, checked twice: directly on
// the modal problem and by evaluating the translated problem. Empty means
// the model is a genuine countermodel with witness `world`.
std::vector<std::string> verify_countermodel(const fml::Problem& problem,
                                             const TranslationConfig& config,
                                             const KripkeModel& model, int world);

// The translated, definition-expanded, beta-normal term for `formula` at a
// world held by the free variable `world_var`.
hol::Term embedded_at_world(const fml::Formula& formula, const TranslationConfig& config,
                            const std::string& world_var);

// For every world, the direct truth value equals the value of the
// translated term applied to that world.
bool correspondence_check(const KripkeModel& model, const fml::Formula& formula,
                          const TranslationConfig& config);

class FixtureError : public Error {
 public:
  FixtureError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-based model format:
//   worlds: w1 w2
//   rel: w1>w2 w2>w2
//   universe: a b
//   dom w1: a            (worlds without a dom line get the whole universe)
//   const c = a
//   fun g(a) = b         (every argument tuple must be listed)
//   pred f @ w1: a       (tuples: a, (a,b), or () for nullary predicates)
// `#` starts a comment.
KripkeModel parse_model(std::string_view text);
std::string print_model(const KripkeModel& model);

}  // namespace fml2hol::kripke
