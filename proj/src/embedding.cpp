#include "fml2hol/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace fml2hol::embed {

using hol::Section;
using hol::Type;
using hol::Unit;
using hol::UnitKind;

std::vector<TranslationConfig> all_configs() {
  std::vector<TranslationConfig> out;
  for (Logic l : kAllLogics)
    for (DomainCondition d : kAllDomains) out.push_back({l, d});
  return out;
}

std::string tag(Logic logic) {
  switch (logic) {
    case Logic::K: return "k";
    case Logic::K4: return "k4";
    case Logic::D: return "d";
    case Logic::D4: return "d4";
    case Logic::T: return "t";
    case Logic::S4: return "s4";
    case Logic::S5: return "s5";
  }
  return "?";
}

std::string tag(DomainCondition domain) {
  switch (domain) {
    case DomainCondition::Constant: return "const";
    case DomainCondition::Varying: return "vary";
    case DomainCondition::Cumulative: return "cumul";
  }
  return "?";
}

std::string describe(const TranslationConfig& config) {
  return tag(config.logic) + ":" + tag(config.domain);
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<Logic> parse_logic(std::string_view s) {
  const std::string l = lower(s);
  for (Logic logic : kAllLogics)
    if (tag(logic) == l) return logic;
  return std::nullopt;
}

std::optional<DomainCondition> parse_domain(std::string_view s) {
  const std::string l = lower(s);
  if (l == "const" || l == "constant") return DomainCondition::Constant;
  if (l == "vary" || l == "varying") return DomainCondition::Varying;
  if (l == "cumul" || l == "cumulative") return DomainCondition::Cumulative;
  return std::nullopt;
}

std::vector<FrameProperty> frame_properties(Logic logic) {
  using P = FrameProperty;
  switch (logic) {
    case Logic::K: return {};
    case Logic::K4: return {P::Transitive};
    case Logic::D: return {P::Serial};
    case Logic::D4: return {P::Serial, P::Transitive};
    case Logic::T: return {P::Reflexive};
    case Logic::S4: return {P::Reflexive, P::Transitive};
    case Logic::S5: return {P::Reflexive, P::Transitive, P::Symmetric};
  }
  return {};
}

std::string property_name(FrameProperty p) {
  switch (p) {
    case FrameProperty::Serial: return "serial";
    case FrameProperty::Reflexive: return "reflexive";
    case FrameProperty::Transitive: return "transitive";
    case FrameProperty::Symmetric: return "symmetric";
  }
  return "?";
}

namespace names {
std::string box(Logic logic) { return "mbox_" + tag(logic); }
std::string dia(Logic logic) { return "mdia_" + tag(logic); }
std::string rel(Logic logic) { return "rel_" + tag(logic); }
std::string property(FrameProperty p) { return "m" + property_name(p); }
}  // namespace names

bool is_reserved_symbol(std::string_view name) {
  static const std::set<std::string, std::less<>> exact = {
      names::kMu,     names::kValid,  names::kNot,           names::kOr,
      names::kAnd,    names::kImplies, names::kForall,       names::kExists,
      names::kExistsInWorld, "mserial", "mreflexive", "mtransitive", "msymmetric"};
  if (exact.count(name)) return true;
  return name.starts_with("mbox_") || name.starts_with("mdia_") || name.starts_with("rel_");
}

namespace {

Type mu() { return Type::mu(); }
Type world() { return Type::i(); }
Type rho() { return hol::rho(); }
Type rho2() { return Type::arrow(rho(), Type::arrow(rho(), rho())); }
Type quantifier_type() { return Type::arrow(Type::arrow(mu(), rho()), rho()); }
Type relation_type() { return hol::curried({world(), world()}, Type::o()); }
Type exists_in_world_type() { return hol::curried({mu(), world()}, Type::o()); }

hol::Term c_not() { return hol::Const(names::kNot, Type::arrow(rho(), rho())); }
hol::Term c_or() { return hol::Const(names::kOr, rho2()); }
hol::Term c_and() { return hol::Const(names::kAnd, rho2()); }
hol::Term c_implies() { return hol::Const(names::kImplies, rho2()); }
hol::Term c_box(Logic l) { return hol::Const(names::box(l), Type::arrow(rho(), rho())); }
hol::Term c_dia(Logic l) { return hol::Const(names::dia(l), Type::arrow(rho(), rho())); }
hol::Term c_forall() { return hol::Const(names::kForall, quantifier_type()); }
hol::Term c_exists() { return hol::Const(names::kExists, quantifier_type()); }
hol::Term c_valid() { return hol::Const(names::kValid, Type::arrow(rho(), Type::o())); }
hol::Term c_rel(Logic l) { return hol::Const(names::rel(l), relation_type()); }
hol::Term c_eiw() { return hol::Const(names::kExistsInWorld, exists_in_world_type()); }

bool guarded(DomainCondition d) { return d != DomainCondition::Constant; }

// Declaration followed by definition.
void define(std::vector<Unit>& out, const std::string& symbol, Type type, hol::Term body,
            Section section) {
  out.push_back(Unit::type_decl(symbol + "_type", symbol, type, section));
  out.push_back(Unit::definition(symbol, symbol, std::move(body), section));
}

hol::Term property_body(FrameProperty p) {
  const auto R = hol::Var("R", relation_type());
  const auto S = hol::Var("S", world());
  const auto T = hol::Var("T", world());
  const auto U = hol::Var("U", world());
  auto r = [&](const hol::Term& a, const hol::Term& b) { return hol::App(R, {a, b}); };
  hol::Term body = [&] {
    switch (p) {
      case FrameProperty::Serial:
        return hol::Forall("S", world(), hol::Exists("T", world(), r(S, T)));
      case FrameProperty::Reflexive:
        return hol::Forall("S", world(), r(S, S));
      case FrameProperty::Transitive:
        return hol::Forall(
            "S", world(),
            hol::Forall("T", world(),
                        hol::Forall("U", world(),
                                    hol::Implies(hol::And(r(S, T), r(T, U)), r(S, U)))));
      case FrameProperty::Symmetric:
        return hol::Forall("S", world(),
                           hol::Forall("T", world(), hol::Implies(r(S, T), r(T, S))));
    }
    return r(S, S);
  }();
  return hol::Lambda("R", relation_type(), body);
}

}  // namespace

hol::Term embed_term(const fml::Term& term) {
  switch (term.kind()) {
    case fml::Term::Kind::Variable:
      return hol::Var(term.name(), mu());
    case fml::Term::Kind::Constant:
      return hol::Const(term.name(), mu());
    case fml::Term::Kind::Function: {
      std::vector<hol::Term> args;
      std::vector<Type> arg_types;
      for (const auto& a : term.args()) {
        args.push_back(embed_term(a));
        arg_types.push_back(mu());
      }
      return hol::App(hol::Const(term.name(), hol::curried(arg_types, mu())), args);
    }
  }
  throw EmbeddingError("unreachable term kind");
}

hol::Term embed_formula(const fml::Formula& f, const TranslationConfig& config) {
  using K = fml::Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      std::vector<hol::Term> args;
      std::vector<Type> arg_types;
      for (const auto& a : f.args()) {
        args.push_back(embed_term(a));
        arg_types.push_back(mu());
      }
      return hol::App(hol::Const(f.name(), hol::curried(arg_types, rho())), args);
    }
    case K::Not:
      return hol::App(c_not(), embed_formula(f.sub(), config));
    case K::And:
      return hol::App(c_and(), {embed_formula(f.lhs(), config), embed_formula(f.rhs(), config)});
    case K::Or:
      return hol::App(c_or(), {embed_formula(f.lhs(), config), embed_formula(f.rhs(), config)});
    case K::Implies:
      return hol::App(c_implies(),
                      {embed_formula(f.lhs(), config), embed_formula(f.rhs(), config)});
    case K::Box:
      return hol::App(c_box(config.logic), embed_formula(f.sub(), config));
    case K::Dia:
      return hol::App(c_dia(config.logic), embed_formula(f.sub(), config));
    case K::Forall:
      return hol::App(c_forall(), hol::Lambda(f.name(), mu(), embed_formula(f.sub(), config)));
    case K::Exists:
      return hol::App(c_exists(), hol::Lambda(f.name(), mu(), embed_formula(f.sub(), config)));
  }
  throw EmbeddingError("unreachable formula kind");
}

std::vector<Unit> connective_definitions(const TranslationConfig& config) {
  const Section dom = Section::DomainAxioms;
  const Section log = Section::LogicAxioms;
  const Type quant_arg = Type::arrow(mu(), rho());
  const auto Phi = hol::Var("Phi", rho());
  const auto Psi = hol::Var("Psi", rho());
  const auto W = hol::Var("W", world());
  const auto V = hol::Var("V", world());
  const auto X = hol::Var("X", mu());
  const auto QPhi = hol::Var("Phi", quant_arg);

  std::vector<Unit> out;
  out.push_back(Unit::sort_decl("mu_type", names::kMu, dom));
  if (guarded(config.domain))
    out.push_back(Unit::type_decl(std::string(names::kExistsInWorld) + "_type",
                                  names::kExistsInWorld, exists_in_world_type(), dom));

  define(out, names::kValid, Type::arrow(rho(), Type::o()),
         hol::Lambda("Phi", rho(), hol::Forall("W", world(), hol::App(Phi, W))), dom);
  define(out, names::kNot, Type::arrow(rho(), rho()),
         hol::Lambda("Phi", rho(), hol::Lambda("W", world(), hol::Not(hol::App(Phi, W)))), dom);
  define(out, names::kOr, rho2(),
         hol::Lambda("Phi", rho(),
                     hol::Lambda("Psi", rho(),
                                 hol::Lambda("W", world(),
                                             hol::Or(hol::App(Phi, W), hol::App(Psi, W))))),
         dom);
  define(out, names::kAnd, rho2(),
         hol::Lambda("Phi", rho(),
                     hol::Lambda("Psi", rho(),
                                 hol::App(c_not(), hol::App(c_or(), {hol::App(c_not(), Phi),
                                                                     hol::App(c_not(), Psi)})))),
         dom);
  define(out, names::kImplies, rho2(),
         hol::Lambda("Phi", rho(),
                     hol::Lambda("Psi", rho(), hol::App(c_or(), {hol::App(c_not(), Phi), Psi}))),
         dom);

  hol::Term instance = hol::App(QPhi, {X, W});
  hol::Term forall_body =
      guarded(config.domain)
          ? hol::Forall("X", mu(), hol::Implies(hol::App(c_eiw(), {X, W}), instance))
          : hol::Forall("X", mu(), instance);
  define(out, names::kForall, quantifier_type(),
         hol::Lambda("Phi", quant_arg, hol::Lambda("W", world(), forall_body)), dom);
  define(out, names::kExists, quantifier_type(),
         hol::Lambda("Phi", quant_arg,
                     hol::App(c_not(),
                              hol::App(c_forall(),
                                       hol::Lambda("X", mu(),
                                                   hol::App(c_not(), hol::App(QPhi, X)))))),
         dom);

  const Logic l = config.logic;
  out.push_back(Unit::type_decl(names::rel(l) + "_type", names::rel(l), relation_type(), log));
  define(out, names::box(l), Type::arrow(rho(), rho()),
         hol::Lambda("Phi", rho(),
                     hol::Lambda("W", world(),
                                 hol::Forall("V", world(),
                                             hol::Or(hol::Not(hol::App(c_rel(l), {W, V})),
                                                     hol::App(Phi, V))))),
         log);
  define(out, names::dia(l), Type::arrow(rho(), rho()),
         hol::Lambda("Phi", rho(),
                     hol::App(c_not(), hol::App(c_box(l), hol::App(c_not(), Phi)))),
         log);
  for (FrameProperty p : frame_properties(l))
    define(out, names::property(p), Type::arrow(relation_type(), Type::o()), property_body(p),
           log);
  return out;
}

std::vector<Unit> frame_axioms(const TranslationConfig& config) {
  std::vector<Unit> out;
  int k = 0;
  for (FrameProperty p : frame_properties(config.logic)) {
    hol::Term prop = hol::Const(names::property(p), Type::arrow(relation_type(), Type::o()));
    out.push_back(Unit::formula("a" + std::to_string(++k), UnitKind::Axiom,
                                hol::App(prop, c_rel(config.logic)), Section::LogicAxioms));
  }
  return out;
}

std::vector<Unit> domain_axioms(const TranslationConfig& config, const fml::Signature& signature) {
  std::vector<Unit> out;
  if (!guarded(config.domain)) return out;
  const auto W = hol::Var("W", world());
  const auto V = hol::Var("V", world());
  const auto X = hol::Var("X", mu());
  auto eiw = [](const hol::Term& x, const hol::Term& w) { return hol::App(c_eiw(), {x, w}); };

  out.push_back(Unit::formula(names::kNonempty, UnitKind::Axiom,
                              hol::Forall("V", world(), hol::Exists("X", mu(), eiw(X, V))),
                              Section::DomainAxioms));
  for (const auto& c : signature.constants)
    out.push_back(Unit::formula("designation_" + c, UnitKind::Axiom,
                                hol::Forall("W", world(), eiw(hol::Const(c, mu()), W)),
                                Section::Problem));
  for (const auto& f : signature.functions) {
    std::vector<hol::Term> xs;
    std::vector<Type> arg_types;
    for (int i = 1; i <= f.arity; ++i) {
      xs.push_back(hol::Var("X" + std::to_string(i), mu()));
      arg_types.push_back(mu());
    }
    hol::Term guard = eiw(xs[0], W);
    for (std::size_t i = 1; i < xs.size(); ++i) guard = hol::And(guard, eiw(xs[i], W));
    hol::Term body =
        hol::Implies(guard, eiw(hol::App(hol::Const(f.name, hol::curried(arg_types, mu())), xs), W));
    for (int i = f.arity; i >= 1; --i) body = hol::Forall("X" + std::to_string(i), mu(), body);
    out.push_back(Unit::formula("designation_" + f.name, UnitKind::Axiom,
                                hol::Forall("W", world(), body), Section::Problem));
  }
  if (config.domain == DomainCondition::Cumulative) {
    hol::Term body = hol::Implies(hol::And(eiw(X, V), hol::App(c_rel(config.logic), {V, W})),
                                  eiw(X, W));
    out.push_back(Unit::formula(
        names::kCumulative, UnitKind::Axiom,
        hol::Forall("X", mu(), hol::Forall("V", world(), hol::Forall("W", world(), body))),
        Section::Problem));
  }
  return out;
}

hol::Problem embed_problem(const fml::Problem& problem, const TranslationConfig& config) {
  const fml::Signature sig = fml::collect_signature(problem);
  auto check_name = [](const std::string& s) {
    if (is_reserved_symbol(s))
      throw EmbeddingError("symbol '" + s + "' is reserved by the translation");
  };
  for (const auto& p : sig.predicates) check_name(p.name);
  for (const auto& f : sig.functions) check_name(f.name);
  for (const auto& c : sig.constants) check_name(c);

  hol::Problem out;
  out.logic_tag = tag(config.logic);
  out.domain_tag = tag(config.domain);
  auto& units = out.units;

  const std::vector<Unit> vocab = connective_definitions(config);
  const std::vector<Unit> domain = domain_axioms(config, sig);
  auto append_if = [&](const std::vector<Unit>& from, auto pred) {
    for (const auto& u : from)
      if (pred(u)) units.push_back(u);
  };

  append_if(vocab, [](const Unit& u) { return u.section == Section::DomainAxioms; });
  append_if(domain, [](const Unit& u) { return u.section == Section::DomainAxioms; });
  append_if(vocab, [](const Unit& u) { return u.section == Section::LogicAxioms; });
  for (auto& u : frame_axioms(config)) units.push_back(std::move(u));
  append_if(domain, [](const Unit& u) { return u.name == names::kCumulative; });

  for (const auto& p : sig.predicates)
    units.push_back(Unit::type_decl(p.name + "_type", p.name,
                                    hol::curried(std::vector<Type>(p.arity, mu()), rho()),
                                    Section::Problem));
  for (const auto& f : sig.functions)
    units.push_back(Unit::type_decl(f.name + "_type", f.name,
                                    hol::curried(std::vector<Type>(f.arity, mu()), mu()),
                                    Section::Problem));
  for (const auto& c : sig.constants)
    units.push_back(Unit::type_decl(c + "_type", c, mu(), Section::Problem));

  append_if(domain, [](const Unit& u) {
    return u.section == Section::Problem && u.name != names::kCumulative;
  });

  for (const auto& u : problem.units) {
    UnitKind kind = u.role == fml::Role::Conjecture   ? UnitKind::Conjecture
                    : u.role == fml::Role::Hypothesis ? UnitKind::Hypothesis
                                                      : UnitKind::Axiom;
    units.push_back(Unit::formula(u.name, kind,
                                  hol::App(c_valid(), embed_formula(u.formula, config)),
                                  Section::Problem));
  }
  return out;
}

hol::Problem prune_unused(const hol::Problem& problem) {
  std::map<std::string, const Unit*> defs;
  for (const auto& u : problem.units)
    if (u.kind == UnitKind::Definition) defs.emplace(u.symbol, &u);

  std::set<std::string> used;
  std::vector<std::string> work;
  auto use_all = [&](const hol::Term& t) {
    for (const auto& c : hol::constants(t))
      if (used.insert(c).second) work.push_back(c);
  };
  for (const auto& u : problem.units)
    if (u.is_formula()) use_all(*u.term);
  while (!work.empty()) {
    std::string s = work.back();
    work.pop_back();
    if (auto it = defs.find(s); it != defs.end()) use_all(*it->second->term);
  }

  hol::Problem out;
  out.logic_tag = problem.logic_tag;
  out.domain_tag = problem.domain_tag;
  for (const auto& u : problem.units) {
    const bool infra_decl = u.kind == UnitKind::TypeDecl && u.section != Section::Problem;
    if ((u.kind == UnitKind::Definition || infra_decl) && !used.count(u.symbol)) continue;
    out.units.push_back(u);
  }
  return out;
}

}  // namespace fml2hol::embed
