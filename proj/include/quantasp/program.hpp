#pragma once
// Propositional programs, quantified programs and partial interpretations.

#include <quantasp/errors.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace quantasp {

using AtomId  = std::uint32_t;
using AtomSet = std::set<AtomId>;

/// Origin of an atom. Everything but User is toolkit-generated and carries
/// a reserved name prefix.
enum class AtomKind : std::uint8_t {
    User,             // from the input
    ChoiceComplement, // _na_<a>
    Constraint,       // _t_<k>
    Unsat,            // _u_<i>
    BodyAux,          // _t_<head>_<j>
    Gate,             // _phi_<i>
};

inline constexpr std::string_view kChoicePrefix = "_na_";
inline constexpr std::string_view kAuxPrefix    = "_t_";
inline constexpr std::string_view kUnsatPrefix  = "_u_";
inline constexpr std::string_view kGatePrefix   = "_phi_";

bool     is_reserved_name(std::string_view name);
AtomKind kind_from_name(std::string_view name);

/// Bijective name <-> dense id mapping. Append-only; ids are assigned in
/// first-interning order.
class SymbolTable {
public:
    AtomId                intern(std::string_view name);
    std::optional<AtomId> find(std::string_view name) const;
    const std::string&    name(AtomId id) const { return names_.at(id); }
    AtomKind              kind(AtomId id) const { return kinds_.at(id); }
    std::size_t           size() const { return names_.size(); }

    /// `_na_<a>`, or `_na_<a>_<k>` if that name is taken.
    AtomId fresh_choice_complement(AtomId of);
    /// `_t_<k>` with a table-wide counter.
    AtomId fresh_constraint();
    /// `_u_<level>`, suffixed when taken.
    AtomId fresh_unsat(std::size_t level);
    /// `base`, or `base_<k>` for the smallest free k >= 1.
    AtomId fresh(const std::string& base, AtomKind kind);

private:
    AtomId add(std::string name, AtomKind kind);

    std::vector<std::string>                names_;
    std::vector<AtomKind>                   kinds_;
    std::unordered_map<std::string, AtomId> index_;
    std::uint32_t                           next_constraint_ = 0;
};

struct Literal {
    AtomId atom     = 0;
    bool   positive = true;

    Literal complement() const { return {atom, !positive}; }
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(AtomId a) { return {a, true}; }
inline Literal neg(AtomId a) { return {a, false}; }

enum class RuleKind : std::uint8_t { Normal, Choice, Constraint };

/// A rule `h :- B.`, `{a1;...;am} :- B.` or `:- B.`. Body literals and choice
/// atoms are deduplicated at construction, keeping first occurrences.
class Rule {
public:
    static Rule normal(AtomId head, std::vector<Literal> body = {});
    static Rule choice(std::vector<AtomId> atoms, std::vector<Literal> body = {});
    static Rule constraint(std::vector<Literal> body);

    RuleKind                    kind() const { return kind_; }
    std::span<const AtomId>     head() const { return head_; }
    std::span<const Literal>    body() const { return body_; }
    AtomId                      head_atom() const { return head_.at(0); }
    bool                        is_fact() const { return kind_ == RuleKind::Normal && body_.empty(); }
    bool                        has_negative_body() const;
    std::size_t                 positive_size() const;

    /// Copy with `extra` appended to the body.
    Rule with_body_literal(Literal extra) const;

    friend bool operator==(const Rule&, const Rule&) = default;

private:
    Rule(RuleKind k, std::vector<AtomId> h, std::vector<Literal> b);

    RuleKind             kind_;
    std::vector<AtomId>  head_;
    std::vector<Literal> body_;
};

/// A finite list of rules over a (possibly shared) symbol table.
class Program {
public:
    Program();
    explicit Program(std::shared_ptr<SymbolTable> symbols, std::vector<Rule> rules = {});

    const std::vector<Rule>&     rules() const { return rules_; }
    SymbolTable&                 symbols() const { return *symbols_; }
    std::shared_ptr<SymbolTable> symbols_ptr() const { return symbols_; }

    void        add(Rule r) { rules_.push_back(std::move(r)); }
    void        append(const Program& other);
    bool        empty() const { return rules_.empty(); }
    std::size_t size() const { return rules_.size(); }
    /// True if every rule is Normal (constraints and choices eliminated).
    bool        is_normal() const;

    /// Same rules, referring to `table` instead (ids must be valid there).
    Program rebound(std::shared_ptr<SymbolTable> table) const { return Program(std::move(table), rules_); }

private:
    std::shared_ptr<SymbolTable> symbols_;
    std::vector<Rule>            rules_;
};

/// Structural equality by atom names, independent of id assignment.
bool same_rules(const Program& a, const Program& b);

AtomSet herbrand_base(const Program& p);
/// Head atoms; choice atoms count as heads.
AtomSet heads(const Program& p);
/// Atoms having a fact `a.` in p.
AtomSet facts(const Program& p);
AtomSet interface_atoms(const Program& p, const Program& q);

/// Rewrites choice rules and constraints into normal rules:
///   {a1;...;am} :- B.  =>  ai :- not _na_ai, B.   _na_ai :- not ai.
///   :- B.              =>  _t_k :- B, not _t_k.
/// Fresh atoms are added to the program's symbol table. Normal programs are
/// returned unchanged.
Program desugar(const Program& p);

struct DependencyEdge {
    AtomId from;
    AtomId to;
    bool   negative;
    friend auto operator<=>(const DependencyEdge&, const DependencyEdge&) = default;
};

struct DependencyGraph {
    AtomSet                     nodes;
    std::vector<DependencyEdge> edges; // sorted, unique

    /// Strongly connected components in reverse topological order.
    std::vector<std::vector<AtomId>> components() const;
};

/// Positive/negative body-to-head arcs. Choice heads get a negative
/// self-loop (their desugared form is a negative cycle); the `not x` self
/// reference of a desugared constraint atom is not an arc.
DependencyGraph dependency_graph(const Program& p);
bool            is_stratified(const Program& p);

enum class Truth : std::uint8_t { Undef, True, False };

/// Three-valued assignment over an explicit base.
class PartialInterpretation {
public:
    PartialInterpretation() = default;
    explicit PartialInterpretation(AtomSet base);

    /// Total interpretation over `base` whose true atoms are `true_atoms`.
    static PartialInterpretation total(const AtomSet& base, const AtomSet& true_atoms);

    const AtomSet& base() const { return base_; }
    Truth          value(AtomId a) const;
    void           set(AtomId a, Truth t); // adds a to the base
    bool           is_total() const;
    AtomSet        true_atoms() const;
    AtomSet        false_atoms() const;
    bool           decided(AtomId a) const { return value(a) != Truth::Undef; }

    bool literal_true(const Literal& l) const;
    bool literal_false(const Literal& l) const;

    friend bool operator==(const PartialInterpretation&, const PartialInterpretation&) = default;

private:
    AtomSet                 base_;
    std::map<AtomId, Truth> values_;
};

/// { a. | a true in model } ∪ { :- a. | a false in model } over base(p).
Program fix(const Program& p, const PartialInterpretation& model);

enum class Quantifier : std::uint8_t { Exists, Forall };

struct Level {
    Quantifier quantifier;
    Program    program;
};

/// □1 P1 ... □n Pn : C. All programs share one symbol table.
class QuantifiedProgram {
public:
    /// Throws ProgramError if `levels` is empty or `constraint` is not stratified.
    QuantifiedProgram(std::shared_ptr<SymbolTable> symbols, std::vector<Level> levels, Program constraint);

    const std::vector<Level>&    levels() const { return levels_; }
    const Level&                 level(std::size_t i) const; // 1-based
    const Program&               constraint() const { return constraint_; }
    std::size_t                  size() const { return levels_.size(); }
    SymbolTable&                 symbols() const { return *symbols_; }
    std::shared_ptr<SymbolTable> symbols_ptr() const { return symbols_; }

    /// Program at 1-based index i; i = n+1 denotes C.
    const Program& program_at(std::size_t i) const;

    /// Deep copy with a private symbol table.
    QuantifiedProgram clone() const;

private:
    std::shared_ptr<SymbolTable> symbols_;
    std::vector<Level>           levels_;
    Program                      constraint_;
};

/// P1 ∪ ... ∪ Pi, 1 <= i <= n.
Program prefix_union(const QuantifiedProgram& qp, std::size_t i);

/// Desugars every level and C (C keeps stratification modulo constraint atoms).
QuantifiedProgram desugar(const QuantifiedProgram& qp);

std::string to_string(Quantifier q);

} // namespace quantasp
