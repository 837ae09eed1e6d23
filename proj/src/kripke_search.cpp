#include <algorithm>
#include <numeric>

#include "fml2hol/kripke.hpp"

namespace fml2hol::kripke {

bool has_property(const KripkeModel& m, FrameProperty p) {
  const int n = m.num_worlds();
  switch (p) {
    case FrameProperty::Serial:
      for (int w = 0; w < n; ++w)
        if (std::none_of(m.rel[w].begin(), m.rel[w].end(), [](bool b) { return b; })) return false;
      return true;
    case FrameProperty::Reflexive:
      for (int w = 0; w < n; ++w)
        if (!m.rel[w][w]) return false;
      return true;
    case FrameProperty::Transitive:
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
          if (m.rel[w][v])
            for (int u = 0; u < n; ++u)
              if (m.rel[v][u] && !m.rel[w][u]) return false;
      return true;
    case FrameProperty::Symmetric:
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
          if (m.rel[w][v] && !m.rel[v][w]) return false;
      return true;
  }
  return false;
}

std::vector<FrameProperty> frame_violations(const KripkeModel& model, Logic logic) {
  std::vector<FrameProperty> out;
  for (FrameProperty p : embed::frame_properties(logic))
    if (!has_property(model, p)) out.push_back(p);
  return out;
}

bool check_frame(const KripkeModel& model, Logic logic) {
  return frame_violations(model, logic).empty();
}

namespace {

// Each tuple over dom(w) of the given arity, as index vectors.
template <typename F>
void for_each_tuple(const KripkeModel& m, int w, int arity, F&& f) {
  std::vector<int> elems;
  for (int x = 0; x < m.num_individuals(); ++x)
    if (m.dom[w][x]) elems.push_back(x);
  if (elems.empty()) return;
  std::vector<int> pos(arity, 0);
  std::vector<int> tuple(arity);
  for (;;) {
    for (int i = 0; i < arity; ++i) tuple[i] = elems[pos[i]];
    f(tuple);
    int i = arity - 1;
    while (i >= 0 && ++pos[i] == static_cast<int>(elems.size())) pos[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace

std::vector<std::string> domain_violations(const KripkeModel& m, DomainCondition domain) {
  std::vector<std::string> out;
  const int nw = m.num_worlds();
  if (domain == DomainCondition::Constant) {
    for (int w = 0; w < nw; ++w)
      if (std::find(m.dom[w].begin(), m.dom[w].end(), false) != m.dom[w].end())
        out.push_back("constant domain violated at " + m.worlds[w]);
    return out;
  }
  for (int w = 0; w < nw; ++w) {
    if (std::find(m.dom[w].begin(), m.dom[w].end(), true) == m.dom[w].end())
      out.push_back("non-emptiness violated at " + m.worlds[w]);
    for (const auto& [c, x] : m.consts)
      if (!m.dom[w][x]) out.push_back("designation of " + c + " violated at " + m.worlds[w]);
    for (const auto& [name, f] : m.funcs) {
      bool ok = true;
      for_each_tuple(m, w, f.arity, [&](const std::vector<int>& args) {
        if (!m.dom[w][f.table[m.tuple_index(args)]]) ok = false;
      });
      if (!ok) out.push_back("designation of " + name + " violated at " + m.worlds[w]);
    }
  }
  if (domain == DomainCondition::Cumulative) {
    for (int v = 0; v < nw; ++v)
      for (int w = 0; w < nw; ++w) {
        if (!m.rel[v][w]) continue;
        for (int x = 0; x < m.num_individuals(); ++x)
          if (m.dom[v][x] && !m.dom[w][x]) {
            out.push_back("cumulativity violated from " + m.worlds[v] + " to " + m.worlds[w]);
            break;
          }
      }
  }
  return out;
}

bool check_domains(const KripkeModel& model, DomainCondition domain) {
  return domain_violations(model, domain).empty();
}

namespace {

// Odometer step; false once every combination has been visited.
bool advance(std::vector<int>& digits, const std::vector<int>& lo, const std::vector<int>& hi) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < hi[i]) return true;
    digits[i] = lo[i];
  }
  return false;
}

std::uint64_t permuted(std::uint64_t mask, int n, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      if (mask >> (w * n + v) & 1u) out |= std::uint64_t{1} << (perm[w] * n + perm[v]);
  return out;
}

// Relations on n worlds, as bit masks, that satisfy the frame conditions
// and are the least mask of their isomorphism class.
class RelationSource {
 public:
  RelationSource(int n, Logic logic) : n_(n), logic_(logic), limit_(std::uint64_t{1} << (n * n)) {
    perms_.emplace_back(n);
    std::iota(perms_.back().begin(), perms_.back().end(), 0);
    // Up to 4 worlds the canonicity test is cheap; beyond, enumerate everything.
    if (n <= 4) {
      std::vector<int> p = perms_.back();
      perms_.clear();
      while (std::next_permutation(p.begin(), p.end())) perms_.push_back(p);
    } else {
      perms_.clear();
    }
  }

  bool next(KripkeModel& m) {
    while (cursor_ < limit_) {
      const std::uint64_t mask = cursor_++;
      if (!canonical(mask)) continue;
      for (int w = 0; w < n_; ++w)
        for (int v = 0; v < n_; ++v) m.rel[w][v] = mask >> (w * n_ + v) & 1u;
      if (check_frame(m, logic_)) return true;
    }
    return false;
  }

 private:
  bool canonical(std::uint64_t mask) const {
    for (const auto& p : perms_)
      if (permuted(mask, n_, p) < mask) return false;
    return true;
  }

  int n_;
  Logic logic_;
  std::uint64_t limit_;
  std::uint64_t cursor_ = 0;
  std::vector<std::vector<int>> perms_;
};

class Search {
 public:
  Search(const fml::Problem& problem, const TranslationConfig& config, const SearchBounds& bounds)
      : config_(config), bounds_(bounds), sig_(fml::collect_signature(problem)) {
    for (const auto& u : problem.units) {
      if (u.role == fml::Role::Conjecture)
        conjecture_ = u.formula;
      else
        axioms_.push_back(u.formula);
    }
    if (!conjecture_) throw SearchError("no conjecture");
    if (bounds.time_budget)
      deadline_ = std::chrono::steady_clock::now() + *bounds.time_budget;
  }

  SearchResult run() {
    for (int nw = 1; nw <= bounds_.max_worlds && !done(); ++nw)
      for (int ni = 1; ni <= bounds_.max_individuals && !done(); ++ni) size(nw, ni);
    if (result_.status == SearchResult::Status::Countermodel) return result_;
    result_.status = timed_out_ ? SearchResult::Status::Timeout
                                : SearchResult::Status::NoCountermodelWithinBounds;
    return result_;
  }

 private:
  bool done() const {
    return timed_out_ || result_.status == SearchResult::Status::Countermodel;
  }

  bool out_of_time() {
    if (!deadline_) return false;
    if (++ticks_ % 256 != 0) return timed_out_;
    if (std::chrono::steady_clock::now() > *deadline_) timed_out_ = true;
    return timed_out_;
  }

  // True when the search is over (found or timed out).
  bool size(int nw, int ni) {
    KripkeModel m = KripkeModel::make(nw, ni);
    m.declare(sig_);
    RelationSource rels(nw, config_.logic);
    while (rels.next(m)) {
      if (domains(m)) return true;
    }
    return timed_out_;
  }

  bool domains(KripkeModel& m) {
    const int nw = m.num_worlds(), ni = m.num_individuals();
    if (config_.domain == DomainCondition::Constant) return constants(m);
    const int full = 1 << ni;
    std::vector<int> digits(nw, 1), lo(nw, 1), hi(nw, full);
    do {
      for (int w = 0; w < nw; ++w)
        for (int x = 0; x < ni; ++x) m.dom[w][x] = digits[w] >> x & 1;
      if (config_.domain == DomainCondition::Cumulative && !cumulative(m)) continue;
      if (constants(m)) return true;
    } while (advance(digits, lo, hi));
    return false;
  }

  static bool cumulative(const KripkeModel& m) {
    for (int v = 0; v < m.num_worlds(); ++v)
      for (int w = 0; w < m.num_worlds(); ++w)
        if (m.rel[v][w])
          for (int x = 0; x < m.num_individuals(); ++x)
            if (m.dom[v][x] && !m.dom[w][x]) return false;
    return true;
  }

  bool constants(KripkeModel& m) {
    const int ni = m.num_individuals();
    const std::size_t nc = sig_.constants.size();
    std::vector<int> digits(nc, 0), lo(nc, 0), hi(nc, ni);
    do {
      for (std::size_t i = 0; i < nc; ++i) m.consts[sig_.constants[i]] = digits[i];
      if (functions(m)) return true;
    } while (advance(digits, lo, hi));
    return false;
  }

  bool functions(KripkeModel& m) {
    const int ni = m.num_individuals();
    std::vector<int*> cells;
    for (auto& [name, f] : m.funcs)
      for (int& c : f.table) cells.push_back(&c);
    std::vector<int> digits(cells.size(), 0), lo(cells.size(), 0), hi(cells.size(), ni);
    do {
      for (std::size_t i = 0; i < cells.size(); ++i) *cells[i] = digits[i];
      if (!check_domains(m, config_.domain)) continue;
      if (predicates(m)) return true;
    } while (advance(digits, lo, hi));
    return false;
  }

  bool predicates(KripkeModel& m) {
    std::vector<std::vector<bool>*> rows;
    for (auto& [name, p] : m.preds)
      for (auto& row : p.extension) {
        row.assign(row.size(), false);
        rows.push_back(&row);
      }
    for (;;) {
      if (out_of_time()) return true;
      ++result_.candidates;
      if (int w = witness(m); w >= 0) {
        result_.status = SearchResult::Status::Countermodel;
        result_.model = m;
        result_.world = w;
        return true;
      }
      // Binary increment over all extension bits.
      bool carry = true;
      for (auto* row : rows) {
        for (std::size_t i = 0; i < row->size() && carry; ++i) {
          carry = (*row)[i];
          (*row)[i] = !(*row)[i];
        }
        if (!carry) break;
      }
      if (carry) return false;
    }
  }

  int witness(const KripkeModel& m) const {
    int found = -1;
    for (int w = 0; w < m.num_worlds(); ++w)
      if (!eval_fml(m, w, *conjecture_, {}, config_.domain)) {
        found = w;
        break;
      }
    if (found < 0) return -1;
    for (const auto& a : axioms_)
      for (int w = 0; w < m.num_worlds(); ++w)
        if (!eval_fml(m, w, a, {}, config_.domain)) return -1;
    return found;
  }

  TranslationConfig config_;
  SearchBounds bounds_;
  fml::Signature sig_;
  std::optional<fml::Formula> conjecture_;
  std::vector<fml::Formula> axioms_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  long long ticks_ = 0;
  bool timed_out_ = false;
  SearchResult result_;
};

}  // namespace

SearchResult find_countermodel(const fml::Problem& problem, const TranslationConfig& config,
                               const SearchBounds& bounds) {
  if (bounds.max_worlds < 1 || bounds.max_individuals < 1)
    throw SearchError("search bounds must be at least 1");
  return Search(problem, config, bounds).run();
}

hol::Term embedded_at_world(const fml::Formula& formula, const TranslationConfig& config,
                            const std::string& world_var) {
  hol::Problem vocab;
  vocab.units = embed::connective_definitions(config);
  hol::Term applied =
      hol::App(embed::embed_formula(formula, config), hol::Var(world_var, hol::Type::i()));
  return hol::expand_definitions(vocab, applied);
}

bool correspondence_check(const KripkeModel& model, const fml::Formula& formula,
                          const TranslationConfig& config) {
  const std::string var = "Wroot";
  const hol::Term term = embedded_at_world(formula, config, var);
  for (int w = 0; w < model.num_worlds(); ++w) {
    const bool direct = eval_fml(model, w, formula, {}, config.domain);
    const bool via_hol = eval_hol_truth(model, term, {{var, w}});
    if (direct != via_hol) return false;
  }
  return true;
}

std::vector<std::string> verify_countermodel(const fml::Problem& problem,
                                             const TranslationConfig& config,
                                             const KripkeModel& model, int world) {
  std::vector<std::string> issues;
  if (world < 0 || world >= model.num_worlds()) {
    issues.push_back("witness world out of range");
    return issues;
  }
  for (FrameProperty p : frame_violations(model, config.logic))
    issues.push_back(embed::property_name(p) + " violated");
  for (auto& v : domain_violations(model, config.domain)) issues.push_back(std::move(v));

  const fml::AnnotatedFormula* conj = problem.conjecture();
  if (!conj) {
    issues.push_back("problem has no conjecture");
    return issues;
  }
  for (const auto& u : problem.units) {
    if (&u == conj) continue;
    for (int w = 0; w < model.num_worlds(); ++w)
      if (!eval_fml(model, w, u.formula, {}, config.domain))
        issues.push_back("unit " + u.name + " false at " + model.worlds[w]);
  }
  if (eval_fml(model, world, conj->formula, {}, config.domain))
    issues.push_back("conjecture true at witness " + model.worlds[world]);

  // Second route: every axiom of the translated problem (frame, domain and
  // user axioms) must hold and the translated conjecture must fail.
  const hol::Problem translated = embed::embed_problem(problem, config);
  for (const auto& u : translated.units) {
    if (!u.is_formula()) continue;
    const bool value = eval_hol_truth(model, hol::expand_definitions(translated, *u.term));
    const bool expected = u.kind != hol::UnitKind::Conjecture;
    if (value != expected)
      issues.push_back("translated unit " + u.name + " evaluates to " +
                       (value ? "true" : "false"));
  }
  const hol::Term at_witness = embedded_at_world(conj->formula, config, "Wroot");
  if (eval_hol_truth(model, at_witness, {{"Wroot", world}}))
    issues.push_back("translated conjecture true at witness " + model.worlds[world]);
  return issues;
}

}  // namespace fml2hol::kripke
