#include "fml2hol/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fml2hol/embedding.hpp"
#include "fml2hol/kripke.hpp"
#include "fml2hol/prover.hpp"
#include "fml2hol/qmf_parser.hpp"
#include "fml2hol/thf_emitter.hpp"

namespace fml2hol::cli {

namespace fs = std::filesystem;

namespace {

// Carries an exit code out of a subcommand.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kIoError, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Exit{kIoError, "cannot write '" + path.string() + "'"};
}

struct ConfigFlags {
  std::string format;  // thf:<logic>:<domain>
  std::string logic;
  std::string domain;

  void add_to(CLI::App& app) {
    app.add_option("-f,--format", format, "Target as thf:<logic>:<domain>, e.g. thf:s5:vary");
    app.add_option("--logic", logic, "k, k4, d, d4, t, s4 or s5");
    app.add_option("--domain", domain, "const, vary or cumul");
  }

  embed::TranslationConfig resolve() const {
    std::string l = logic, d = domain;
    if (!format.empty()) {
      auto first = format.find(':');
      auto second = first == std::string::npos ? first : format.find(':', first + 1);
      if (second == std::string::npos || format.substr(0, first) != "thf")
        throw Exit{kInputError, "format must look like thf:<logic>:<domain>, got '" + format + "'"};
      const std::string fl = format.substr(first + 1, second - first - 1);
      const std::string fd = format.substr(second + 1);
      if ((!l.empty() && l != fl) || (!d.empty() && d != fd))
        throw Exit{kUsage, "-f conflicts with --logic/--domain"};
      l = fl;
      d = fd;
    }
    if (l.empty() || d.empty())
      throw Exit{kUsage, "a logic and a domain are required (-f thf:<logic>:<domain>)"};
    auto logic_value = embed::parse_logic(l);
    if (!logic_value) throw Exit{kInputError, "unknown logic '" + l + "'"};
    auto domain_value = embed::parse_domain(d);
    if (!domain_value) throw Exit{kInputError, "unknown domain '" + d + "'"};
    return {*logic_value, *domain_value};
  }
};

fml::Problem load_problem(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return qmf::parse_problem(text);
  } catch (const Error& e) {
    throw Exit{kInputError, path + ": " + e.what()};
  }
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

struct TranslateCmd {
  std::string input;
  ConfigFlags config;
  std::string mode = "inline";
  std::string axiom_dir;
  std::string basename = "fml2hol";
  std::string output;
  bool prune = false;
  int wrap = 100;

  void add_to(CLI::App& app) {
    app.add_option("input", input, "qmf problem file")->required();
    config.add_to(app);
    app.add_option("--mode", mode, "inline (single file) or include (axiom files + problem)")
        ->check(CLI::IsMember({"inline", "include"}));
    app.add_option("--axiom-dir", axiom_dir,
                   "Axiom directory for include mode (default $FML2HOL_AXIOM_DIR or Axioms)");
    app.add_option("--basename", basename, "Axiom file base name for include mode");
    app.add_option("-o,--output", output, "Output file, '-' for stdout (default <input>.thf)");
    app.add_flag("--prune", prune, "Drop definitions the problem does not use");
    app.add_option("--wrap", wrap, "Wrap column, 0 to disable");
  }

  int run(std::ostream& out) const {
    const auto cfg = config.resolve();
    const fml::Problem problem = load_problem(input);
    hol::Problem translated;
    try {
      translated = embed::embed_problem(problem, cfg);
    } catch (const Error& e) {
      throw Exit{kInputError, input + ": " + e.what()};
    }
    if (prune) translated = embed::prune_unused(translated);

    thf::EmissionMode emission = thf::InlineMode{};
    if (mode == "include") {
      thf::IncludeMode inc;
      if (!axiom_dir.empty())
        inc.axiom_dir = axiom_dir;
      else if (const char* env = std::getenv("FML2HOL_AXIOM_DIR"); env && *env)
        inc.axiom_dir = env;
      inc.basename = basename;
      emission = inc;
    }
    const thf::EmittedOutput emitted = thf::emit_problem(translated, emission, {wrap});

    const std::string target = output.empty() ? stem_of(input) + ".thf" : output;
    const fs::path base = target == "-" ? fs::path() : fs::path(target).parent_path();
    for (const auto& f : emitted.axiom_files) {
      const fs::path p = fs::path(f.path).is_absolute() ? fs::path(f.path) : base / f.path;
      write_file(p, f.text);
    }
    if (target == "-")
      out << emitted.problem_text;
    else
      write_file(target, emitted.problem_text);
    return kOk;
  }
};

struct CheckCmd {
  std::string input;
  ConfigFlags config;
  int max_worlds = 3;
  int max_individuals = 3;
  double timeout = 0;
  bool strict_timeout = false;

  void add_to(CLI::App& app) {
    app.add_option("input", input, "qmf problem file")->required();
    config.add_to(app);
    app.add_option("--max-worlds", max_worlds, "Largest number of worlds")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-individuals", max_individuals, "Largest number of individuals")
        ->check(CLI::PositiveNumber);
    app.add_option("--timeout", timeout, "Time budget in seconds (0: none)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--strict-timeout", strict_timeout, "Exit with status 3 on timeout");
  }

  int run(std::ostream& out) const {
    const auto cfg = config.resolve();
    const fml::Problem problem = load_problem(input);
    if (!problem.conjecture()) throw Exit{kInputError, input + ": no conjecture"};
    kripke::SearchBounds bounds{max_worlds, max_individuals, std::nullopt};
    if (timeout > 0)
      bounds.time_budget = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
    const kripke::SearchResult r = kripke::find_countermodel(problem, cfg, bounds);
    const std::string name = stem_of(input);
    switch (r.status) {
      case kripke::SearchResult::Status::Countermodel:
        out << "# countermodel for " << embed::describe(cfg) << ", conjecture false at "
            << r.model->worlds[r.world] << "\n"
            << kripke::print_model(*r.model) << "SZS status CounterSatisfiable for " << name
            << "\n";
        return kOk;
      case kripke::SearchResult::Status::NoCountermodelWithinBounds:
        out << "no countermodel within bounds (worlds <= " << max_worlds
            << ", individuals <= " << max_individuals
            << "); this does not establish theoremhood\n"
            << "SZS status Unknown for " << name << "\n";
        return kOk;
      case kripke::SearchResult::Status::Timeout:
        out << "search timed out after " << timeout << " s\n"
            << "SZS status Timeout for " << name << "\n";
        return strict_timeout ? kTimeout : kOk;
    }
    return kOk;
  }
};

struct EvalCmd {
  std::string input;
  std::string model_path;
  ConfigFlags config;

  void add_to(CLI::App& app) {
    app.add_option("input", input, "qmf problem file")->required();
    app.add_option("-m,--model", model_path, "Model fixture file")->required();
    config.add_to(app);
  }

  int run(std::ostream& out, std::ostream& err) const {
    const auto cfg = config.resolve();
    const fml::Problem problem = load_problem(input);
    kripke::KripkeModel model;
    try {
      model = kripke::parse_model(read_file(model_path));
    } catch (const kripke::FixtureError& e) {
      throw Exit{kInputError, model_path + ": " + e.what()};
    }
    std::vector<std::string> violations;
    for (auto p : kripke::frame_violations(model, cfg.logic))
      violations.push_back(embed::property_name(p) + " violated");
    for (auto& v : kripke::domain_violations(model, cfg.domain)) violations.push_back(v);
    if (!violations.empty()) {
      for (const auto& v : violations) err << model_path << ": " << v << "\n";
      return kBadFixture;
    }

    std::vector<const fml::AnnotatedFormula*> targets;
    if (const auto* c = problem.conjecture())
      targets.push_back(c);
    else
      for (const auto& u : problem.units) targets.push_back(&u);

    bool corresponds = true;
    try {
      for (const auto* u : targets) {
        for (int w = 0; w < model.num_worlds(); ++w) {
          const bool v = kripke::eval_fml(model, w, u->formula, {}, cfg.domain);
          out << u->name << ": " << (v ? "true" : "false") << " at " << model.worlds[w] << "\n";
        }
      }
      for (const auto& u : problem.units)
        corresponds = corresponds && kripke::correspondence_check(model, u.formula, cfg);
    } catch (const kripke::EvalError& e) {
      throw Exit{kInputError, std::string("evaluation failed: ") + e.what()};
    }
    out << (corresponds ? "correspondence OK" : "correspondence MISMATCH") << "\n";
    return corresponds ? kOk : kInputError;
  }
};

struct ProverCmd {
  std::string input;
  std::string command;
  double timeout = 60;

  void add_to(CLI::App& app) {
    app.add_option("input", input, "thf problem file")->required();
    app.add_option("--prover", command, "Command template containing {file}")->required();
    app.add_option("--timeout", timeout, "Seconds before the prover is killed")
        ->check(CLI::PositiveNumber);
  }

  int run(std::ostream& out) const {
    if (command.find("{file}") == std::string::npos)
      throw Exit{kUsage, "--prover must contain a {file} placeholder"};
    const auto r = prover::run_prover(
        input, command, std::chrono::milliseconds(static_cast<long long>(timeout * 1000)));
    out << "SZS status " << prover::to_string(r.status.kind);
    if (r.status.kind == prover::SzsStatus::Kind::Error) out << " (" << r.status.raw << ")";
    out << "\n";
    return r.status.kind == prover::SzsStatus::Kind::Error ? kInputError : kOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translate first-order modal logic problems (qmf) into higher-order logic (thf)",
               "fml2hol"};
  app.require_subcommand(1);

  TranslateCmd translate;
  CheckCmd check;
  EvalCmd eval;
  ProverCmd prover_cmd;
  auto* translate_app = app.add_subcommand("translate", "Write the thf translation of a problem");
  auto* check_app = app.add_subcommand("check", "Search for a finite countermodel");
  auto* eval_app = app.add_subcommand("eval", "Evaluate a problem in a model fixture");
  auto* prover_app = app.add_subcommand("run-prover", "Run an external prover, report SZS status");
  translate.add_to(*translate_app);
  check.add_to(*check_app);
  eval.add_to(*eval_app);
  prover_cmd.add_to(*prover_app);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*translate_app) return translate.run(out);
    if (*check_app) return check.run(out);
    if (*eval_app) return eval.run(out, err);
    if (*prover_app) return prover_cmd.run(out);
  } catch (const Exit& e) {
    err << "fml2hol: " << e.message << "\n";
    if (e.code == kUsage) err << app.help();
    return e.code;
  } catch (const std::exception& e) {
    err << "fml2hol: " << e.what() << "\n";
    return kInputError;
  }
  err << app.help();
  return kUsage;
}

}  // namespace fml2hol::cli
