#pragma once

// Reader and printer for qmf problem files: TPTP fof syntax extended with
// the prefix modal operators `#box :` and `#dia :`.
//
//   qmf(con,conjecture,(
//       ( ! [X] : ( #box : ( f(X) ) ) ) => ( #box : ( ! [X] : ( f(X) ) ) ) )).
//
// Binding strength, tightest first: `~ #box #dia`, `&`, `|`, then
// `=> <= <=>` (right associative). Quantifier bodies extend as far right as
// possible. `<=>` and `<=` are desugared, binder lists `[X,Y]` become nested
// single-variable quantifiers.

#include <string>
#include <string_view>

#include "fml2hol/error.hpp"
#include "fml2hol/fml_ast.hpp"

namespace fml2hol::qmf {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found);

  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  // Offending lexeme, empty at end of input.
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

// Parses every `qmf(name, role, formula).` unit and validates the result.
// Throws ParseError or fml::ValidationError.
fml::Problem parse_problem(std::string_view text);

// A single formula, e.g. "#box : ( p )". Not validated (may be open).
fml::Formula parse_formula(std::string_view text);

// Fully parenthesized output, accepted by parse_problem.
std::string print_formula(const fml::Formula& f);
std::string print_term(const fml::Term& t);
std::string print_problem(const fml::Problem& problem);

}  // namespace fml2hol::qmf
