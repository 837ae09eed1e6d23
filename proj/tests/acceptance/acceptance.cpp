// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fml2hol/embedding.hpp"
#include "fml2hol/hol_ast.hpp"
#include "fml2hol/kripke.hpp"
#include "fml2hol/prover.hpp"
#include "fml2hol/qmf_parser.hpp"
#include "fml2hol/thf_emitter.hpp"
#include "generators.hpp"
#include "thf_reader.hpp"

namespace fs = std::filesystem;
using namespace fml2hol;
using embed::DomainCondition;
using embed::Logic;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kSource = FML2HOL_SOURCE_DIR;
const std::string kBinary = FML2HOL_BINARY;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using Tokens = std::vector<std::string>;

bool contains(const Tokens& hay, const Tokens& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

// Countermodels produced anywhere in the run, re-verified by criterion 7.
struct Found {
  fml::Problem problem;
  embed::TranslationConfig config;
  kripke::SearchResult result;
};
std::vector<Found> g_found;

kripke::SearchResult search(const fml::Problem& p, const embed::TranslationConfig& cfg,
                            const kripke::SearchBounds& b) {
  auto r = kripke::find_countermodel(p, cfg, b);
  if (r.status == kripke::SearchResult::Status::Countermodel) g_found.push_back({p, cfg, r});
  return r;
}

const char* kE1Conjecture =
    "mvalid @ ( mimplies @ ( mforall_ind @ ^ [X: mu] : ( mbox_d @ ( f @ X ) ) ) @ ( mbox_d @ ( "
    "mforall_ind @ ^ [X: mu] : ( f @ X ) ) ) )";

Outcome golden_translation() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "fml2hol_acceptance_golden";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string e1 = kSource + "/problems/E1.qmf";
  auto translate = [&](const std::string& fmt, const std::string& out) {
    const std::string cmd = "'" + kBinary + "' translate -f " + fmt + " --mode include '" + e1 +
                            "' -o '" + (dir / out).string() + "'";
    return std::system(cmd.c_str()) == 0;
  };

  o.require(translate("thf:d:const", "E1_d.thf"), "translate thf:d:const failed");
  o.require(translate("thf:s5:vary", "E1_s5.thf"), "translate thf:s5:vary failed");
  if (!o.ok) return o;

  const Tokens d = thf::tokenize(slurp(dir / "E1_d.thf"));
  const Tokens expected_d = thf::tokenize(
      std::string("include('Axioms/fml2hol_const.ax').\n"
                  "include('Axioms/fml2hol_d.ax').\n"
                  "thf(f_type,type,( f: mu > $i > $o )).\n"
                  "thf(con,conjecture,( ") +
      kE1Conjecture + " )).");
  o.require(d == expected_d, "d:const problem file differs from the expected token stream");
  const Tokens d_ax = thf::tokenize(slurp(dir / "Axioms/fml2hol_const.ax") +
                                    slurp(dir / "Axioms/fml2hol_d.ax"));
  o.require(contains(d_ax, thf::tokenize("thf(mforall_ind,definition,( mforall_ind = ( ^ [Phi: mu "
                                         "> $i > $o, W: $i] : ! [X: mu] : ( Phi @ X @ W ) ) )).")),
            "constant-domain mforall_ind definition missing");
  o.require(contains(d_ax, thf::tokenize("thf(mbox_d,definition,( mbox_d = ( ^ [Phi: $i > $o,W: "
                                         "$i] : ! [V: $i] : ( ~ ( rel_d @ W @ V ) | ( Phi @ V ) "
                                         ") ) )).")),
            "mbox_d definition missing");
  o.require(contains(d_ax, thf::tokenize("thf(a1,axiom,( mserial @ rel_d )).")),
            "seriality axiom missing");

  const Tokens s5 = thf::tokenize(slurp(dir / "E1_s5.thf"));
  std::string conj_s5 = kE1Conjecture;
  for (std::size_t pos; (pos = conj_s5.find("mbox_d")) != std::string::npos;)
    conj_s5.replace(pos, 6, "mbox_s5");
  o.require(s5 == thf::tokenize("include('Axioms/fml2hol_vary.ax'). "
                                "include('Axioms/fml2hol_s5.ax'). "
                                "thf(f_type,type,( f: mu > $i > $o )). thf(con,conjecture,( " +
                                conj_s5 + " ))."),
            "s5:vary problem file differs from the expected token stream");
  const Tokens s5_ax = thf::tokenize(slurp(dir / "Axioms/fml2hol_vary.ax") +
                                     slurp(dir / "Axioms/fml2hol_s5.ax"));
  o.require(contains(s5_ax, thf::tokenize("thf(mforall_ind,definition,( mforall_ind = ( ^ [Phi: "
                                          "mu > $i > $o,W: $i] : ! [X: mu] : ( ( exists_in_world "
                                          "@ X @ W ) => ( Phi @ X @ W ) ) ) )).")),
            "guarded mforall_ind definition missing");
  o.require(contains(s5_ax, thf::tokenize("thf(nonempty_ax,axiom,( ! [V : $i] : ? [X : mu] : "
                                          "(exists_in_world @ X @ V))).")),
            "nonempty_ax missing");
  o.require(contains(s5_ax, thf::tokenize("thf(mbox_s5,definition,( mbox_s5 = ( ^ [Phi: $i > "
                                          "$o,W: $i] : ! [V: $i] : ( ~ ( rel_s5 @ W @ V ) | ( Phi "
                                          "@ V ) ) ) )).")),
            "mbox_s5 definition missing");
  o.require(contains(s5_ax, thf::tokenize("thf(a1,axiom,( mreflexive @ rel_s5 )). "
                                          "thf(a2,axiom,( mtransitive @ rel_s5 )). "
                                          "thf(a3,axiom,( msymmetric @ rel_s5 )).")),
            "rel_s5 frame axioms missing");
  fs::remove_all(dir);
  return o;
}

Outcome e1_matrix() {
  Outcome o;
  const fml::Problem e1 = qmf::parse_problem(slurp(kSource + "/problems/E1.qmf"));
  for (const auto& cfg : embed::all_configs()) {
    const bool expect_counter =
        cfg.domain == DomainCondition::Varying ||
        (cfg.domain == DomainCondition::Cumulative && cfg.logic != Logic::S5);
    const auto r = search(e1, cfg, {3, 3, std::nullopt});
    const bool got_counter = r.status == kripke::SearchResult::Status::Countermodel;
    const bool got_none = r.status == kripke::SearchResult::Status::NoCountermodelWithinBounds;
    o.require(expect_counter ? got_counter : got_none,
              embed::describe(cfg) + ": expected " +
                  (expect_counter ? "CounterSatisfiable" : "NoCountermodelWithinBounds"));
  }
  return o;
}

Outcome correspondence() {
  Outcome o;
  testing::Rng rng(20240601);
  for (auto domain : embed::kAllDomains) {
    int checked = 0;
    for (int i = 0; i < 240; ++i) {
      const auto vocab = testing::small_vocabulary(rng);
      const auto f = i % 2 == 0 ? testing::random_formula(rng, vocab, 5)
                                : testing::random_formula_exact(rng, vocab, 5);
      const Logic logic = embed::kAllLogics[static_cast<std::size_t>(i) % 7];
      fml::Signature sig = fml::collect_signature(f);
      // Interpret the whole vocabulary, used or not.
      sig.predicates = vocab.predicates;
      sig.functions = vocab.functions;
      sig.constants = vocab.constants;
      const int nw = 1 + i % 3, ni = 1 + (i / 3) % 3;
      const auto m = testing::random_model(rng, sig, nw, ni, domain, logic);
      if (!kripke::check_frame(m, logic) || !kripke::check_domains(m, domain)) {
        o.require(false, "generated model violates its own conditions");
        return o;
      }
      const bool same = kripke::correspondence_check(m, f, {logic, domain});
      o.require(same, "mismatch under " + embed::tag(domain) + " for " + qmf::print_formula(f));
      ++checked;
    }
    o.require(checked >= 200, "fewer than 200 pairs for " + embed::tag(domain));
  }
  return o;
}

std::vector<fml::Problem> fuzz_corpus(int n) {
  testing::Rng rng(777);
  std::vector<fml::Problem> out;
  for (int i = 0; i < n; ++i)
    out.push_back(testing::random_problem(rng, testing::fuzz_vocabulary(rng), 4));
  return out;
}

Outcome type_soundness() {
  Outcome o;
  const auto corpus = fuzz_corpus(500);
  int checked = 0;
  for (const auto& p : corpus) {
    for (const auto& cfg : embed::all_configs()) {
      try {
        hol::check_problem(embed::embed_problem(p, cfg));
        ++checked;
      } catch (const Error& e) {
        o.require(false, embed::describe(cfg) + ": " + e.what() + "\n" + qmf::print_problem(p));
        return o;
      }
    }
  }
  o.require(checked == 500 * 21, "not every problem was checked");
  return o;
}

Outcome round_trips() {
  Outcome o;
  testing::Rng rng(4242);
  std::set<fml::Formula::Kind> seen;
  std::function<void(const fml::Formula&)> note = [&](const fml::Formula& f) {
    seen.insert(f.kind());
    if (f.kind() == fml::Formula::Kind::Atom) return;
    note(f.lhs());
    if (f.is_binary()) note(f.rhs());
  };
  for (int i = 0; i < 500; ++i) {
    const auto vocab = testing::fuzz_vocabulary(rng);
    const auto f = testing::random_formula(rng, vocab, 8);
    note(f);
    o.require(fml::depth(f) <= 8, "generator exceeded depth 8");
    const fml::Problem p{{{"u" + std::to_string(i), fml::Role::Conjecture, f}}};
    const std::string text = qmf::print_problem(p);
    try {
      o.require(qmf::parse_problem(text) == p, "qmf round trip changed " + text);
    } catch (const Error& e) {
      o.require(false, std::string("qmf re-parse failed: ") + e.what() + "\n" + text);
    }
    const auto cfg = embed::all_configs()[static_cast<std::size_t>(i) % 21];
    const hol::Problem hp = embed::embed_problem(p, cfg);
    for (bool include : {false, true}) {
      const thf::EmissionMode mode =
          include ? thf::EmissionMode{thf::IncludeMode{}} : thf::EmissionMode{thf::InlineMode{}};
      try {
        const hol::Problem back = testing::read_emitted(thf::emit_problem(hp, mode));
        o.require(hol::alpha_equal(back, hp), "thf re-read differs for " + text);
      } catch (const std::exception& e) {
        o.require(false, std::string("thf re-read failed: ") + e.what());
      }
    }
    if (!o.ok) return o;
  }
  o.require(seen.size() == 9, "fuzz corpus misses some formula constructors");
  return o;
}

// Definitional frame predicates over a relation given as adjacency bits.
bool def_serial(const std::vector<std::vector<bool>>& r) {
  for (const auto& row : r)
    if (std::find(row.begin(), row.end(), true) == row.end()) return false;
  return true;
}
bool def_reflexive(const std::vector<std::vector<bool>>& r) {
  for (std::size_t w = 0; w < r.size(); ++w)
    if (!r[w][w]) return false;
  return true;
}
bool def_symmetric(const std::vector<std::vector<bool>>& r) {
  for (std::size_t w = 0; w < r.size(); ++w)
    for (std::size_t v = 0; v < r.size(); ++v)
      if (r[w][v] != r[v][w]) return false;
  return true;
}
bool def_transitive(const std::vector<std::vector<bool>>& r) {
  const std::size_t n = r.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (r[a][b] && r[b][c] && !r[a][c]) return false;
  return true;
}

bool def_logic(Logic l, const std::vector<std::vector<bool>>& r) {
  switch (l) {
    case Logic::K: return true;
    case Logic::K4: return def_transitive(r);
    case Logic::D: return def_serial(r);
    case Logic::D4: return def_serial(r) && def_transitive(r);
    case Logic::T: return def_reflexive(r);
    case Logic::S4: return def_reflexive(r) && def_transitive(r);
    case Logic::S5: return def_reflexive(r) && def_transitive(r) && def_symmetric(r);
  }
  return false;
}

// Domains as bitmasks over the universe; g is a unary function table.
bool def_domains(DomainCondition d, const std::vector<std::vector<bool>>& rel,
                 const std::vector<unsigned>& dom, unsigned universe, int c,
                 const std::vector<int>& g) {
  const std::size_t n = dom.size();
  for (std::size_t w = 0; w < n; ++w) {
    if (d == DomainCondition::Constant) {
      if (dom[w] != universe) return false;
      continue;
    }
    if (dom[w] == 0) return false;
    if (!(dom[w] >> c & 1u)) return false;
    for (std::size_t x = 0; x < g.size(); ++x)
      if ((dom[w] >> x & 1u) && !(dom[w] >> g[x] & 1u)) return false;
  }
  if (d == DomainCondition::Cumulative)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        if (rel[v][w] && (dom[v] & ~dom[w]) != 0) return false;
  return true;
}

Outcome checkers() {
  Outcome o;
  long long agreements = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& r : testing::all_relations(n)) {
      kripke::KripkeModel m = kripke::KripkeModel::make(n, 1);
      m.rel = r;
      for (Logic l : embed::kAllLogics) {
        o.require(kripke::check_frame(m, l) == def_logic(l, r),
                  "check_frame disagrees for " + embed::tag(l));
        ++agreements;
      }
      const std::pair<embed::FrameProperty, bool> props[] = {
          {embed::FrameProperty::Serial, def_serial(r)},
          {embed::FrameProperty::Reflexive, def_reflexive(r)},
          {embed::FrameProperty::Transitive, def_transitive(r)},
          {embed::FrameProperty::Symmetric, def_symmetric(r)}};
      for (const auto& [p, v] : props)
        o.require(kripke::has_property(m, p) == v, "has_property disagrees");

      // Domains, a constant c and a unary function g over universes of 1 and 2.
      for (int ni = 1; ni <= 2; ++ni) {
        const unsigned universe = (1u << ni) - 1;
        const int dom_choices = 1 << ni;
        int total_doms = 1;
        for (int w = 0; w < n; ++w) total_doms *= dom_choices;
        int g_tables = 1;
        for (int x = 0; x < ni; ++x) g_tables *= ni;
        for (int dcode = 0; dcode < total_doms; ++dcode) {
          std::vector<unsigned> dom(n);
          int rest = dcode;
          for (int w = 0; w < n; ++w) {
            dom[w] = static_cast<unsigned>(rest % dom_choices);
            rest /= dom_choices;
          }
          for (int c = 0; c < ni; ++c) {
            for (int gcode = 0; gcode < g_tables; ++gcode) {
              std::vector<int> g(ni);
              int gr = gcode;
              for (int x = 0; x < ni; ++x) {
                g[x] = gr % ni;
                gr /= ni;
              }
              kripke::KripkeModel dm = kripke::KripkeModel::make(n, ni);
              dm.rel = r;
              for (int w = 0; w < n; ++w)
                for (int x = 0; x < ni; ++x) dm.dom[w][x] = dom[w] >> x & 1u;
              dm.consts["c"] = c;
              dm.funcs["g"] = kripke::Function{1, g};
              for (auto d : embed::kAllDomains) {
                o.require(kripke::check_domains(dm, d) == def_domains(d, r, dom, universe, c, g),
                          "check_domains disagrees under " + embed::tag(d));
                ++agreements;
              }
            }
          }
        }
      }
    }
  }
  o.detail = o.ok ? std::to_string(agreements) + " comparisons" : o.detail;
  return o;
}

Outcome countermodel_soundness() {
  Outcome o;
  // Add countermodels for random problems to those found by the E1 matrix.
  testing::Rng rng(31337);
  for (int i = 0; i < 60; ++i) {
    const auto p = testing::random_problem(rng, testing::small_vocabulary(rng), 3);
    search(p, embed::all_configs()[static_cast<std::size_t>(i) % 21],
           {2, 2, std::chrono::milliseconds(2000)});
  }
  int violations = 0;
  for (const auto& f : g_found) {
    const auto issues =
        kripke::verify_countermodel(f.problem, f.config, *f.result.model, f.result.world);
    if (!issues.empty()) {
      ++violations;
      o.require(false, embed::describe(f.config) + ": " + issues.front());
    }
  }
  o.require(g_found.size() >= 20, "too few countermodels to be meaningful");
  if (o.ok)
    o.detail = std::to_string(g_found.size()) + " countermodels, " + std::to_string(violations) +
               " violations";
  return o;
}

Outcome szs_dispatch() {
  Outcome o;
  const std::string stub = kSource + "/tests/support/stub_prover.sh";
  using K = prover::SzsStatus::Kind;
  const std::pair<const char*, K> cases[] = {
      {"theorem", K::Theorem}, {"countersat", K::CounterSatisfiable}, {"garbage", K::Error}};
  for (const auto& [mode, want] : cases) {
    const auto r = prover::run_prover("E1.thf", stub + " " + mode + " {file}", std::chrono::seconds(10));
    o.require(r.status.kind == want, std::string("stub mode ") + mode + " gave " +
                                         prover::to_string(r.status.kind));
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::chrono::milliseconds limit;  // zero: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  using std::chrono::milliseconds;
  const std::vector<Criterion> criteria = {
      {1, "golden translation of E1 (d:const, s5:vary)", milliseconds(1000), golden_translation},
      {2, "E1 matrix over 21 configurations at bounds (3,3)", milliseconds(60000), e1_matrix},
      {3, "correspondence on 200+ random pairs per domain condition", milliseconds(30000),
       correspondence},
      {4, "type soundness, 500 problems x 21 configurations", milliseconds(0), type_soundness},
      {5, "qmf and thf round trips on 500-formula corpus", milliseconds(0), round_trips},
      {6, "frame and domain checkers against definitional oracles", milliseconds(0), checkers},
      {7, "every countermodel re-verifies", milliseconds(0), countermodel_soundness},
      {8, "SZS dispatch through a stub prover", milliseconds(0), szs_dispatch},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<milliseconds>(Clock::now() - start);
    if (o.ok && c.limit.count() > 0 && ms > c.limit) {
      o.ok = false;
      o.detail = "exceeded " + std::to_string(c.limit.count()) + " ms";
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
              << ms.count() << " ms)";
    if (!o.detail.empty()) std::cout << " - " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " acceptance criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
