#include <functional>
#include <memory>

#include "fml2hol/kripke.hpp"

namespace fml2hol::kripke {

namespace {

class FmlEvaluator {
 public:
  FmlEvaluator(const KripkeModel& m, DomainCondition range) : m_(m), range_(range) {}

  void bind(const std::string& var, int x) { env_.emplace_back(&var, x); }

  bool formula(int w, const fml::Formula& f) {
    using K = fml::Formula::Kind;
    switch (f.kind()) {
      case K::Atom: {
        std::vector<int> args;
        args.reserve(f.args().size());
        for (const auto& t : f.args()) args.push_back(term(t));
        return m_.holds(f.name(), w, args);
      }
      case K::Not:
        return !formula(w, f.sub());
      case K::And:
        return formula(w, f.lhs()) && formula(w, f.rhs());
      case K::Or:
        return formula(w, f.lhs()) || formula(w, f.rhs());
      case K::Implies:
        return !formula(w, f.lhs()) || formula(w, f.rhs());
      case K::Box:
        for (int v = 0; v < m_.num_worlds(); ++v)
          if (m_.rel[w][v] && !formula(v, f.sub())) return false;
        return true;
      case K::Dia:
        for (int v = 0; v < m_.num_worlds(); ++v)
          if (m_.rel[w][v] && formula(v, f.sub())) return true;
        return false;
      case K::Forall:
      case K::Exists: {
        const bool universal = f.kind() == K::Forall;
        const fml::Formula body = f.sub();
        for (int x = 0; x < m_.num_individuals(); ++x) {
          if (range_ != DomainCondition::Constant && !m_.dom[w][x]) continue;
          env_.emplace_back(&f.name(), x);
          const bool v = formula(w, body);
          env_.pop_back();
          if (v != universal) return v;
        }
        return universal;
      }
    }
    return false;
  }

 private:
  int term(const fml::Term& t) {
    switch (t.kind()) {
      case fml::Term::Kind::Variable:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (*it->first == t.name()) return it->second;
        throw EvalError(EvalError::Kind::UnboundVariable, "unbound variable " + t.name());
      case fml::Term::Kind::Constant: {
        auto it = m_.consts.find(t.name());
        if (it == m_.consts.end())
          throw EvalError(EvalError::Kind::UnknownSymbol,
                          "constant '" + t.name() + "' is not interpreted by the model");
        return it->second;
      }
      case fml::Term::Kind::Function: {
        std::vector<int> args;
        for (const auto& a : t.args()) args.push_back(term(a));
        return m_.apply(t.name(), args);
      }
    }
    return 0;
  }

  const KripkeModel& m_;
  DomainCondition range_;
  std::vector<std::pair<const std::string*, int>> env_;
};

struct Value;
using Fn = std::function<Value(const Value&)>;

struct Value {
  enum class Kind { Truth, Element, Function } kind = Kind::Truth;
  bool truth = false;
  int element = 0;
  std::shared_ptr<const Fn> fn;

  static Value of(bool b) { return {Kind::Truth, b, 0, nullptr}; }
  static Value elem(int e) { return {Kind::Element, false, e, nullptr}; }
  static Value function(Fn f) {
    return {Kind::Function, false, 0, std::make_shared<const Fn>(std::move(f))};
  }
};

using Env = std::vector<std::pair<std::string, Value>>;

int arity_of(const hol::Type& t) {
  int n = 0;
  for (hol::Type cur = t; cur.is_arrow(); cur = cur.to()) ++n;
  return n;
}

bool is_user_predicate_type(const hol::Type& t) {
  // mu > ... > mu > $i > $o
  hol::Type cur = t;
  while (cur.is_arrow() && cur.from().kind() == hol::Type::Kind::Mu) cur = cur.to();
  return cur == hol::rho();
}

bool is_user_function_type(const hol::Type& t) {
  hol::Type cur = t;
  while (cur.is_arrow() && cur.from().kind() == hol::Type::Kind::Mu) cur = cur.to();
  return cur.kind() == hol::Type::Kind::Mu;
}

class HolEvaluator {
 public:
  explicit HolEvaluator(const KripkeModel& m) : m_(m) {}

  Value eval(const hol::Term& t, Env& env) {
    using K = hol::Term::Kind;
    switch (t.kind()) {
      case K::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw EvalError(EvalError::Kind::UnboundVariable, "unbound variable " + t.name());
      case K::Const:
        return constant(t, {});
      case K::App: {
        std::vector<hol::Term> args;
        hol::Term head = t;
        while (head.kind() == K::App) {
          args.push_back(head.arg());
          head = head.fun();
        }
        if (head.kind() == K::Const && static_cast<int>(args.size()) == arity_of(head.type())) {
          std::vector<int> vals;
          vals.reserve(args.size());
          for (auto it = args.rbegin(); it != args.rend(); ++it) vals.push_back(element(*it, env));
          return saturated(head, vals);
        }
        Value f = eval(t.fun(), env);
        if (f.kind != Value::Kind::Function)
          throw EvalError(EvalError::Kind::NotAValue, "application of a non-function");
        return (*f.fn)(eval(t.arg(), env));
      }
      case K::Lambda: {
        Env captured = env;
        hol::Term lam = t;
        return Value::function([this, captured, lam](const Value& a) {
          Env inner = captured;
          inner.emplace_back(lam.name(), a);
          return eval(lam.body(), inner);
        });
      }
      case K::Forall:
      case K::Exists: {
        const bool universal = t.kind() == K::Forall;
        int n;
        switch (t.type().kind()) {
          case hol::Type::Kind::Mu: n = m_.num_individuals(); break;
          case hol::Type::Kind::I: n = m_.num_worlds(); break;
          default:
            throw EvalError(EvalError::Kind::NonFiniteType,
                            "quantification over a non-base type is not evaluable");
        }
        const hol::Term body = t.body();
        for (int x = 0; x < n; ++x) {
          env.emplace_back(t.name(), Value::elem(x));
          const bool v = truth(body, env);
          env.pop_back();
          if (v != universal) return Value::of(v);
        }
        return Value::of(universal);
      }
      case K::Not:
        return Value::of(!truth(t.operand(), env));
      case K::Or:
        return Value::of(truth(t.lhs(), env) || truth(t.rhs(), env));
      case K::And:
        return Value::of(truth(t.lhs(), env) && truth(t.rhs(), env));
      case K::Implies:
        return Value::of(!truth(t.lhs(), env) || truth(t.rhs(), env));
    }
    return Value::of(false);
  }

  bool truth(const hol::Term& t, Env& env) {
    Value v = eval(t, env);
    if (v.kind != Value::Kind::Truth)
      throw EvalError(EvalError::Kind::NotAValue, "expected a truth value");
    return v.truth;
  }

 private:
  int element(const hol::Term& t, Env& env) {
    Value v = eval(t, env);
    if (v.kind != Value::Kind::Element)
      throw EvalError(EvalError::Kind::NotAValue, "expected a world or an individual");
    return v.element;
  }

  // Partial application: collect arguments until saturated.
  Value constant(const hol::Term& c, std::vector<int> collected) {
    if (static_cast<int>(collected.size()) == arity_of(c.type())) return saturated(c, collected);
    return Value::function([this, c, collected](const Value& a) {
      if (a.kind != Value::Kind::Element)
        throw EvalError(EvalError::Kind::NotAValue,
                        "symbol '" + c.name() + "' applied to a non-element");
      std::vector<int> next = collected;
      next.push_back(a.element);
      return constant(c, std::move(next));
    });
  }

  Value saturated(const hol::Term& c, const std::vector<int>& args) {
    const std::string& name = c.name();
    const hol::Type& type = c.type();
    if (name == embed::names::kExistsInWorld &&
        type == hol::curried({hol::Type::mu(), hol::Type::i()}, hol::Type::o()))
      return Value::of(m_.dom[args[1]][args[0]]);
    if (name.starts_with("rel_") &&
        type == hol::curried({hol::Type::i(), hol::Type::i()}, hol::Type::o()))
      return Value::of(m_.rel[args[0]][args[1]]);
    if (type.kind() == hol::Type::Kind::Mu) {
      auto it = m_.consts.find(name);
      if (it == m_.consts.end())
        throw EvalError(EvalError::Kind::UnknownSymbol,
                        "constant '" + name + "' is not interpreted by the model");
      return Value::elem(it->second);
    }
    if (is_user_function_type(type)) return Value::elem(m_.apply(name, args));
    if (is_user_predicate_type(type)) {
      std::span<const int> ind(args.data(), args.size() - 1);
      return Value::of(m_.holds(name, args.back(), ind));
    }
    throw EvalError(EvalError::Kind::UnknownSymbol,
                    "symbol '" + name + "' has no interpretation in a Kripke model");
  }

  const KripkeModel& m_;
};

// Result type without checking; enough to classify a returned element.
hol::Type synth_type(const hol::Term& t) {
  using K = hol::Term::Kind;
  switch (t.kind()) {
    case K::Var:
    case K::Const:
      return t.type();
    case K::App: {
      hol::Type f = synth_type(t.fun());
      return f.is_arrow() ? f.to() : f;
    }
    case K::Lambda:
      return hol::Type::arrow(t.type(), synth_type(t.body()));
    default:
      return hol::Type::o();
  }
}

}  // namespace

bool eval_fml(const KripkeModel& model, int world, const fml::Formula& formula,
              const Assignment& assignment, DomainCondition quantifier_range) {
  if (world < 0 || world >= model.num_worlds())
    throw EvalError(EvalError::Kind::NotAValue, "world index out of range");
  FmlEvaluator ev(model, quantifier_range);
  for (const auto& [var, x] : assignment) ev.bind(var, x);
  return ev.formula(world, formula);
}

HolValue eval_hol(const KripkeModel& model, const hol::Term& term, const HolEnvironment& env) {
  HolEvaluator ev(model);
  Env e;
  for (const auto& [name, x] : env) e.emplace_back(name, Value::elem(x));
  Value v = ev.eval(term, e);
  switch (v.kind) {
    case Value::Kind::Truth:
      return {HolValue::Kind::Truth, v.truth, 0};
    case Value::Kind::Element: {
      const bool is_world = synth_type(term).kind() == hol::Type::Kind::I;
      return {is_world ? HolValue::Kind::World : HolValue::Kind::Individual, false, v.element};
    }
    case Value::Kind::Function:
      break;
  }
  throw EvalError(EvalError::Kind::NotAValue, "term denotes a function, not a value");
}

bool eval_hol_truth(const KripkeModel& model, const hol::Term& term, const HolEnvironment& env) {
  HolEvaluator ev(model);
  Env e;
  for (const auto& [name, x] : env) e.emplace_back(name, Value::elem(x));
  return ev.truth(term, e);
}

}  // namespace fml2hol::kripke
