#pragma once
// Trivial levels and Guess&Check rewriting of quantified programs.

#include <quantasp/program.hpp>

#include <optional>
#include <string>
#include <variant>

namespace quantasp {

struct GcSplit {
    Program               guess; // empty-body choice rules
    Program               check; // stratified normal rules and constraints
    std::optional<AtomId> unsat_atom;
};

/// Why a program is not Guess&Check.
struct NotGc {
    std::string reason;
};

struct TrivialityReport {
    std::size_t level = 0;
    bool        syntactically_trivial = false;
    AtomSet     ext_atoms;
    bool        interface_ok = false;
};

/// Ext_i = heads(P_i) ∩ ⋃_{j>i} Int(P_i, P_j), with C as level n+1.
AtomSet ext_atoms(const QuantifiedProgram& qp, std::size_t i);

/// (i) every atom P_i shares with an earlier P_j is a fact of P_j, and
/// (ii) P_i has only empty-body choice rules covering Ext_i.
TrivialityReport check_trivial(const QuantifiedProgram& qp, std::size_t i);

/// Semantic variant of (ii): AS(P_i)|Ext_i = 2^Ext_i, by brute force.
bool semantically_trivial(const QuantifiedProgram& qp, std::size_t i);

std::variant<GcSplit, NotGc> split_guess_check(const Program& p);

/// τ(u, P): check rules unchanged, constraints `:- B` become `u :- B`.
Program tau(AtomId u, const GcSplit& split);
/// ρ(u, P): every rule gets `not u` appended.
Program rho(AtomId u, const Program& p);
/// τ(u, split) ∪ ρ(u, next).
Program sigma(AtomId u, const GcSplit& split, const Program& next);

/// Π^{GC_i}. Works on a private copy of the symbol table; the fresh atom is
/// `_u_<i>`. Throws GcError if level i is not universal, does not split, or
/// a later level redefines one of its check atoms.
QuantifiedProgram gc_rewrite_level(const QuantifiedProgram& qp, std::size_t i);

/// Whether qp is Guess&Check: quantifiers alternate and every universal
/// level splits. On failure, `why` receives the reason.
bool is_gc_program(const QuantifiedProgram& qp, std::string* why = nullptr);

/// Folds gc_rewrite_level over the universal levels, outermost first.
QuantifiedProgram gc_chain(const QuantifiedProgram& qp);

} // namespace quantasp
