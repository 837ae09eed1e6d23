#include <gtest/gtest.h>

#include <sstream>

#include "fml2hol/embedding.hpp"
#include "fml2hol/qmf_parser.hpp"
#include "fml2hol/thf_emitter.hpp"
#include "generators.hpp"
#include "thf_reader.hpp"

namespace fml2hol::thf {
namespace {

using embed::DomainCondition;
using embed::Logic;

constexpr const char* kE1 =
    "qmf(con,conjecture,( ( ! [X] : ( #box : ( f(X) ) ) ) => ( #box : ( ! [X] : ( f(X) ) ) ) )).";

hol::Problem e1(Logic l, DomainCondition d) {
  return embed::embed_problem(qmf::parse_problem(kE1), {l, d});
}

TEST(EmitTerm, ConstantDomainQuantifierBody) {
  const hol::Type mu = hol::Type::mu(), i = hol::Type::i();
  const hol::Type phi_t = hol::curried({mu}, hol::rho());
  const hol::Term body = hol::Lambda(
      "Phi", phi_t,
      hol::Lambda("W", i,
                  hol::Forall("X", mu,
                              hol::App(hol::Var("Phi", phi_t), {hol::Var("X", mu), hol::Var("W", i)}))));
  EXPECT_EQ(tokenize(emit_term(body)),
            tokenize("^ [Phi: mu > $i > $o,W: $i] : ! [X: mu] : ( Phi @ X @ W )"));
}

TEST(EmitTerm, Constant) { EXPECT_EQ(emit_term(hol::Const("p", hol::rho())), "p"); }

TEST(EmitTerm, RelationApplication) {
  const hol::Type i = hol::Type::i();
  const hol::Term t = hol::App(hol::Const("rel_d", hol::curried({i, i}, hol::Type::o())),
                               {hol::Var("W", i), hol::Var("V", i)});
  EXPECT_EQ(emit_term(t), "rel_d @ W @ V");
}

TEST(EmitTerm, ConnectivesAndNesting) {
  const hol::Type o = hol::Type::o();
  const hol::Term p = hol::Var("P", o), q = hol::Var("Q", o);
  EXPECT_EQ(emit_term(hol::Not(p)), "~ P");
  EXPECT_EQ(emit_term(hol::Or(hol::Not(p), q)), "~ P | Q");
  EXPECT_EQ(emit_term(hol::And(hol::Or(p, q), q)), "( P | Q ) & Q");
  EXPECT_EQ(emit_term(hol::Implies(p, hol::Implies(q, p))), "P => ( Q => P )");
  EXPECT_EQ(emit_term(hol::Exists("X", hol::Type::mu(), p)), "? [X: mu] : P");
}

TEST(EmitUnit, Shapes) {
  EXPECT_EQ(emit_unit(hol::Unit::sort_decl("mu_type", "mu", hol::Section::DomainAxioms)),
            "thf(mu_type,type,( mu: $tType )).\n");
  EXPECT_EQ(emit_unit(hol::Unit::type_decl("f_type", "f", hol::curried({hol::Type::mu()}, hol::rho()),
                                           hol::Section::Problem)),
            "thf(f_type,type,( f: mu > $i > $o )).\n");
}

TEST(EmitProblem, E1IncludeModeGolden) {
  const auto out = emit_problem(e1(Logic::D, DomainCondition::Constant), IncludeMode{});
  const std::string expected =
      "include('Axioms/fml2hol_const.ax').\n"
      "include('Axioms/fml2hol_d.ax').\n"
      "thf(f_type,type,( f: mu > $i > $o )).\n"
      "thf(con,conjecture,( mvalid @\n"
      "    ( mimplies @ ( mforall_ind @ ^ [X: mu] : ( mbox_d @ ( f @ X ) ) )\n"
      "               @ ( mbox_d @ ( mforall_ind @ ^ [X: mu] : ( f @ X ) ) ) ) )).\n";
  EXPECT_EQ(tokenize(out.problem_text), tokenize(expected));
  ASSERT_EQ(out.axiom_files.size(), 2u);
  EXPECT_EQ(out.axiom_files[0].path, "Axioms/fml2hol_const.ax");
  EXPECT_EQ(out.axiom_files[1].path, "Axioms/fml2hol_d.ax");
}

bool contains_tokens(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

TEST(EmitProblem, E1AxiomFilesContainGoldenDefinitions) {
  const auto d = emit_problem(e1(Logic::D, DomainCondition::Constant), IncludeMode{});
  EXPECT_TRUE(contains_tokens(
      tokenize(d.axiom_files[0].text),
      tokenize("thf(mforall_ind,definition,( mforall_ind = ( ^ [Phi: mu > $i > $o, W: $i] : ! [X: "
               "mu] : ( Phi @ X @ W ) ) )).")));
  EXPECT_TRUE(contains_tokens(
      tokenize(d.axiom_files[1].text),
      tokenize("thf(mbox_d,definition,( mbox_d = ( ^ [Phi: $i > $o,W: $i] : ! [V: $i] : ( ~ ( "
               "rel_d @ W @ V ) | ( Phi @ V ) ) ) )).")));
  EXPECT_TRUE(contains_tokens(tokenize(d.axiom_files[1].text),
                              tokenize("thf(a1,axiom,( mserial @ rel_d )).")));

  const auto s5 = emit_problem(e1(Logic::S5, DomainCondition::Varying), IncludeMode{});
  EXPECT_TRUE(contains_tokens(
      tokenize(s5.axiom_files[0].text),
      tokenize("thf(mforall_ind,definition,( mforall_ind = ( ^ [Phi: mu > $i > $o,W: $i] : ! [X: "
               "mu] : ( ( exists_in_world @ X @ W ) => ( Phi @ X @ W ) ) ) )).")));
  EXPECT_TRUE(contains_tokens(
      tokenize(s5.axiom_files[0].text),
      tokenize("thf(nonempty_ax,axiom,( ! [V : $i] : ? [X : mu] : (exists_in_world @ X @ V))).")));
  EXPECT_TRUE(contains_tokens(
      tokenize(s5.axiom_files[1].text),
      tokenize("thf(a1,axiom,( mreflexive @ rel_s5 )). thf(a2,axiom,( mtransitive @ rel_s5 )). "
               "thf(a3,axiom,( msymmetric @ rel_s5 )).")));
}

TEST(EmitProblem, InlineDefinesBeforeUse) {
  const std::string text = emit_problem(e1(Logic::D, DomainCondition::Constant)).problem_text;
  const auto def = text.find("thf(mbox_d,definition");
  const auto con = text.find("thf(con,conjecture");
  ASSERT_NE(def, std::string::npos);
  ASSERT_NE(con, std::string::npos);
  EXPECT_LT(def, con);
  EXPECT_EQ(text.find("include("), std::string::npos);
}

TEST(EmitProblem, EmptyProblem) {
  EXPECT_EQ(emit_problem(hol::Problem{}).problem_text, "");
  EXPECT_TRUE(emit_problem(hol::Problem{}, IncludeMode{}).axiom_files.empty());
}

TEST(EmitProblem, CustomAxiomDirectory) {
  const auto out =
      emit_problem(e1(Logic::S4, DomainCondition::Cumulative), IncludeMode{"ax", "lcl"});
  EXPECT_NE(out.problem_text.find("include('ax/lcl_cumul.ax')."), std::string::npos);
  EXPECT_NE(out.problem_text.find("include('ax/lcl_s4.ax')."), std::string::npos);
}

TEST(EmitProblem, Deterministic) {
  for (const auto& cfg : embed::all_configs()) {
    const auto a = emit_problem(e1(cfg.logic, cfg.domain), IncludeMode{});
    const auto b = emit_problem(e1(cfg.logic, cfg.domain), IncludeMode{});
    EXPECT_EQ(a.problem_text, b.problem_text);
    ASSERT_EQ(a.axiom_files.size(), b.axiom_files.size());
    for (std::size_t i = 0; i < a.axiom_files.size(); ++i)
      EXPECT_EQ(a.axiom_files[i].text, b.axiom_files[i].text);
  }
}

TEST(Wrapping, NeverChangesTokens) {
  const hol::Problem p = e1(Logic::S5, DomainCondition::Cumulative);
  const std::string flat = emit_problem(p, InlineMode{}, {0}).problem_text;
  for (int col : {100, 60, 30}) {
    const std::string wrapped = emit_problem(p, InlineMode{}, {col}).problem_text;
    EXPECT_EQ(tokenize(wrapped), tokenize(flat));
    std::istringstream in(wrapped);
    std::string line;
    while (std::getline(in, line)) {
      // Only a single overlong token may exceed the column.
      if (static_cast<int>(line.size()) > col) {
        EXPECT_EQ(line.find(' ', 4), std::string::npos) << line;
      }
    }
  }
}

TEST(Tokenize, QuotedAndMultiCharacterTokens) {
  EXPECT_EQ(tokenize("include('A b/c.ax'). % note\n a => ~ b <=> c"),
            (std::vector<std::string>{"include", "(", "'A b/c.ax'", ")", ".", "a", "=>", "~", "b",
                                      "<=>", "c"}));
  EXPECT_EQ(tokenize("$i>$o"), (std::vector<std::string>{"$i", ">", "$o"}));
}

TEST(ReRead, E1AllConfigsBothModes) {
  for (const auto& cfg : embed::all_configs()) {
    const hol::Problem p = e1(cfg.logic, cfg.domain);
    EXPECT_TRUE(hol::alpha_equal(testing::read_emitted(emit_problem(p)), p))
        << embed::describe(cfg);
    EXPECT_TRUE(hol::alpha_equal(testing::read_emitted(emit_problem(p, IncludeMode{})), p))
        << embed::describe(cfg);
  }
}

TEST(ReRead, RandomProblems) {
  testing::Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const auto fp = testing::random_problem(rng, testing::fuzz_vocabulary(rng), 4);
    const auto cfg = embed::all_configs()[i % 21];
    const hol::Problem p = embed::embed_problem(fp, cfg);
    const hol::Problem back = testing::read_emitted(emit_problem(p, IncludeMode{}, {40}));
    EXPECT_TRUE(hol::alpha_equal(back, p)) << qmf::print_problem(fp);
  }
}

}  // namespace
}  // namespace fml2hol::thf
