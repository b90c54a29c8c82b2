#pragma once
// The .aspq surface syntax.
//
//   %@exists            section markers; one or more quantified sections,
//   %@forall            then at most one %@constraint section, last
//   %@constraint
//   h :- l1, ..., lk.   rule          h.          fact
//   :- l1, ..., lk.     constraint    {a;b} :- B. choice
//   not a               negation      % ...       comment
//
// Atoms match [a-z_][A-Za-z0-9_()]*; `a(1)` is an opaque label.

#include <quantasp/program.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace quantasp {

enum class SectionMarker : std::uint8_t { Exists, Forall, Constraint };

struct SourceRule {
    Rule        rule;
    std::size_t line;
    std::size_t column;
};

struct SourceSection {
    SectionMarker           marker;
    std::size_t             line;
    std::vector<SourceRule> rules;
};

struct SourceDocument {
    std::shared_ptr<SymbolTable> symbols;
    std::vector<SourceSection>   sections;
};

struct ParseOptions {
    /// Accept toolkit-reserved atom names (`_na_`, `_t_`, `_u_`, `_phi_`),
    /// e.g. when reading back a rendered desugared program.
    bool allow_reserved = false;
};

SourceDocument    parse_document(std::string_view text, const ParseOptions& opts = {});
QuantifiedProgram parse(std::string_view text, const ParseOptions& opts = {});
/// Parses a bare rule list (no section markers) into a program.
Program           parse_program(std::string_view text, const ParseOptions& opts = {});

std::string render(const QuantifiedProgram& qp);
std::string render(const Program& p);
std::string render(const Rule& r, const SymbolTable& symbols);
std::string render(const Literal& l, const SymbolTable& symbols);
/// `{a, ~b}` style listing of the decided atoms.
std::string render(const PartialInterpretation& i, const SymbolTable& symbols);

} // namespace quantasp
