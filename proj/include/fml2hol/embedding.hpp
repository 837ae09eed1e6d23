#pragma once

// Translation of first-order modal problems into higher-order problems.
//
// Modal propositions become predicates over worlds ($i > $o). The lifted
// connectives (mnot, mor, mand, mimplies), the modalities (mbox_<logic>,
// mdia_<logic>), the quantifiers (mforall_ind, mexists_ind) and validity
// (mvalid) are emitted as definitions; the accessibility relation
// rel_<logic> is an uninterpreted constant constrained by frame axioms.
// Varying and cumulative domains guard quantification with the relation
// exists_in_world.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fml2hol/error.hpp"
#include "fml2hol/fml_ast.hpp"
#include "fml2hol/hol_ast.hpp"

namespace fml2hol::embed {

enum class Logic { K, K4, D, D4, T, S4, S5 };
enum class DomainCondition { Constant, Varying, Cumulative };
enum class FrameProperty { Serial, Reflexive, Transitive, Symmetric };

struct TranslationConfig {
  Logic logic = Logic::K;
  DomainCondition domain = DomainCondition::Constant;

  friend bool operator==(const TranslationConfig&, const TranslationConfig&) = default;
};

inline constexpr std::array<Logic, 7> kAllLogics = {Logic::K,  Logic::K4, Logic::D, Logic::D4,
                                                    Logic::T,  Logic::S4, Logic::S5};
inline constexpr std::array<DomainCondition, 3> kAllDomains = {
    DomainCondition::Constant, DomainCondition::Varying, DomainCondition::Cumulative};

// All 21 logic/domain combinations, logics outermost.
std::vector<TranslationConfig> all_configs();

// Lowercase tokens: k k4 d d4 t s4 s5 / const vary cumul.
std::string tag(Logic logic);
std::string tag(DomainCondition domain);
std::string describe(const TranslationConfig& config);  // e.g. "d:const"

// Case-insensitive. Domains also accept constant/varying/cumulative.
std::optional<Logic> parse_logic(std::string_view s);
std::optional<DomainCondition> parse_domain(std::string_view s);

std::vector<FrameProperty> frame_properties(Logic logic);
// "serial", "reflexive", ...
std::string property_name(FrameProperty p);

// Symbol names of the emitted vocabulary.
namespace names {
inline constexpr const char* kMu = "mu";
inline constexpr const char* kValid = "mvalid";
inline constexpr const char* kNot = "mnot";
inline constexpr const char* kOr = "mor";
inline constexpr const char* kAnd = "mand";
inline constexpr const char* kImplies = "mimplies";
inline constexpr const char* kForall = "mforall_ind";
inline constexpr const char* kExists = "mexists_ind";
inline constexpr const char* kExistsInWorld = "exists_in_world";
inline constexpr const char* kNonempty = "nonempty_ax";
inline constexpr const char* kCumulative = "cumulative_ax";

std::string box(Logic logic);  // mbox_<tag>
std::string dia(Logic logic);  // mdia_<tag>
std::string rel(Logic logic);  // rel_<tag>
std::string property(FrameProperty p);  // mserial, mreflexive, ...
}  // namespace names

// True for names the embedding itself defines or declares.
bool is_reserved_symbol(std::string_view name);

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

// A term of type $i > $o.
hol::Term embed_formula(const fml::Formula& formula, const TranslationConfig& config);
// A term of type mu.
hol::Term embed_term(const fml::Term& term);

// Declarations and definitions of the vocabulary for `config`, domain-file
// units first, then logic-file units (relation, modalities, frame property
// predicates).
std::vector<hol::Unit> connective_definitions(const TranslationConfig& config);

// a1, a2, ...: one `m<property> @ rel_<tag>` axiom per frame property.
std::vector<hol::Unit> frame_axioms(const TranslationConfig& config);

// Constant: nothing. Varying: non-emptiness, one designation axiom per
// constant and per function symbol. Cumulative: Varying plus the axiom that
// domains grow along the accessibility relation.
std::vector<hol::Unit> domain_axioms(const TranslationConfig& config,
                                     const fml::Signature& signature);

// Unit order (fixed): domain-file vocabulary, non-emptiness, logic-file
// vocabulary, frame axioms, cumulativity, user symbol declarations,
// designation axioms, then one `mvalid @ F` unit per input unit.
// Throws EmbeddingError for reserved user symbols.
hol::Problem embed_problem(const fml::Problem& problem, const TranslationConfig& config);

// Drops definitions (and infrastructure declarations) nothing refers to.
hol::Problem prune_unused(const hol::Problem& problem);

}  // namespace fml2hol::embed
