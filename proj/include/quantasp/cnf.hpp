#pragma once
// CNF(P): Clark completion plus loop formulas. Models of cnf_encode(P),
// projected onto base(P), are exactly the answer sets of P.

#include <quantasp/program.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace quantasp {

/// DIMACS-style literal: +v / -v for 1-based variable v.
using CnfLit = std::int32_t;
using Clause = std::vector<CnfLit>;

struct CnfVar {
    AtomId      atom = 0;     // meaningful unless aux
    bool        aux  = false; // body variable, not in base(P)
    std::string name;         // atom name, or _t_<head>_<j> for aux

    friend bool operator==(const CnfVar&, const CnfVar&) = default;
};

class CnfFormula {
public:
    const std::vector<Clause>& clauses() const { return clauses_; }
    const std::vector<CnfVar>& vars() const { return vars_; }
    std::size_t                num_vars() const { return vars_.size(); }
    const CnfVar&              var(CnfLit v) const { return vars_.at(static_cast<std::size_t>(v) - 1); }

    /// Variable of an atom, allocating one on first use.
    CnfLit atom_var(AtomId a, const std::string& name);
    CnfLit new_aux(const std::string& name);
    /// 0 if the atom has no variable.
    CnfLit find_atom(AtomId a) const;

    /// Normalizes (sort by variable, drop duplicate literals) and appends
    /// unless the clause is a tautology or already present.
    void add_clause(Clause c);
    bool has_empty_clause() const;

    /// Desugared constraint atoms eliminated by the encoder. They are false in
    /// every answer set and have no variable.
    const AtomSet& eliminated_atoms() const { return eliminated_; }
    void           mark_eliminated(AtomId a) { eliminated_.insert(a); }

    std::vector<CnfLit> aux_vars() const;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
    std::vector<Clause>        clauses_;
    std::vector<CnfVar>        vars_;
    std::map<AtomId, CnfLit>   atom_vars_;
    std::set<Clause>           seen_;
    AtomSet                    eliminated_;
};

/// Completion over base(P). Per atom a with bodies B1..Bk:
///   k = 0       ¬a
///   k = 1       a ↔ ∧B1 (no auxiliary variable)
///   k > 1       a ↔ t1 ∨ ... ∨ tk, tj the literal itself for |Bj| = 1,
///               otherwise an aux _t_<a>_<j> ↔ ∧Bj
/// A desugared constraint `_t_k :- B, not _t_k` becomes the clause ¬B.
/// Throws ProgramError on non-normal rules.
CnfFormula clark_completion(const Program& p);

struct LoopOptions {
    std::size_t max_scc_size = 12;
};

/// Adds, for every loop L of the positive dependency graph, the clauses
/// ¬a ∨ ES(L) for a ∈ L, where ES(L) are the external support bodies.
/// Throws LoopBoundError when a non-trivial SCC exceeds the bound.
CnfFormula loop_formulas(const Program& p, CnfFormula completion, const LoopOptions& opts = {});

/// completion ∪ loop formulas.
CnfFormula cnf_encode(const Program& p, const LoopOptions& opts = {});

/// All loops (sets of atoms strongly connected through positive arcs) of p.
std::vector<AtomSet> enumerate_loops(const Program& p, const LoopOptions& opts = {});

enum class Verdict : std::uint8_t { True, False, Unknown };

/// Is the CNF unsatisfiable? True on a unit-propagation conflict, or after
/// exhaustive search when num_vars <= limit; False if a model was found;
/// Unknown otherwise.
Verdict bounded_incoherence_check(const CnfFormula& cnf, std::size_t limit = 20);

std::string to_string(Verdict v);

} // namespace quantasp
