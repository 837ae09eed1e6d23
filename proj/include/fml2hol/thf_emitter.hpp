#pragma once

// thf0 concrete syntax for hol terms and problems.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fml2hol/hol_ast.hpp"

namespace fml2hol::thf {

struct InlineMode {};

// Vocabulary goes to two axiom files, `<basename>_<domain>.ax` and
// `<basename>_<logic>.ax`, under axiom_dir; the problem file includes them.
struct IncludeMode {
  std::string axiom_dir = "Axioms";
  std::string basename = "fml2hol";
};

using EmissionMode = std::variant<InlineMode, IncludeMode>;

struct EmitOptions {
  // Lines longer than this are broken between tokens; 0 disables wrapping.
  int wrap_column = 100;
};

struct EmittedFile {
  std::string path;  // relative, e.g. "Axioms/fml2hol_const.ax"
  std::string text;
};

struct EmittedOutput {
  std::string problem_text;
  std::vector<EmittedFile> axiom_files;  // empty in inline mode
};

std::string emit_type(const hol::Type& type);
std::string emit_term(const hol::Term& term);
// One `thf(name,kind,( ... )).` line (wrapped), with trailing newline.
std::string emit_unit(const hol::Unit& unit, int wrap_column = 100);

EmittedOutput emit_problem(const hol::Problem& problem, const EmissionMode& mode = InlineMode{},
                           const EmitOptions& options = {});

// thf token stream of `text`; whitespace and `%` comments are dropped.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace fml2hol::thf
