#pragma once
// Well-founded model, residual programs and the well-founded choice interface.

#include <quantasp/program.hpp>

namespace quantasp {

struct WfResult {
    PartialInterpretation model;    // W over base(P)
    Program               residual; // R(P)
    bool                  trivially_incoherent = false;
};

/// Atoms with a rule whose body is true w.r.t. i. Requires a normal program.
AtomSet tp_step(const Program& p, const PartialInterpretation& i);

/// Greatest unfounded set U_P(i): base(P) minus the least set S closed under
/// "a ∈ S if some rule for a has a body not false w.r.t. i and B+ ⊆ S".
AtomSet greatest_unfounded(const Program& p, const PartialInterpretation& i);

/// Least fixpoint of I -> T_P(I) ∪ ¬U_P(I) from the empty interpretation,
/// plus the residual: rules with a false body literal are dropped and true
/// body literals deleted. Throws ProgramError on non-normal input.
WfResult well_founded_model(const Program& p);

/// Residual of p w.r.t. an arbitrary interpretation w.
Program residual(const Program& p, const PartialInterpretation& w);

/// Interface program between `lower` and `upper` given the well-founded
/// model of the lower side:
///   {a1;...;ak}.  for interface atoms undefined in w_lower
///   a.            for interface atoms true in w_lower
///   :- a.         for interface atoms false in w_lower that upper defines
/// Interface atoms false in w_lower and not defined by upper are omitted.
/// With an empty w_lower this is the plain choice interface.
Program wf_choice_interface(const Program& lower, const Program& upper, const PartialInterpretation& w_lower);

/// Plain choice interface ch(Int(lower, upper)).
Program choice_interface(const Program& lower, const Program& upper);

} // namespace quantasp
