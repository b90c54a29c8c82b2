#pragma once
// Brute-force answer sets and ASP(Q) coherence, straight from the definitions.
// Slow on purpose; meant for small programs and for cross-checking.

#include <quantasp/program.hpp>

#include <cstdint>
#include <vector>

namespace quantasp {

struct OracleOptions {
    /// Upper bound on atoms that are neither forced nor absent from heads.
    std::size_t   max_free_atoms = 20;
    /// Total candidate interpretations examined by one coherence query.
    std::uint64_t budget = std::uint64_t{1} << 18;
};

struct AnswerSetCollection {
    AtomSet              base;
    std::vector<AtomSet> models; // sorted
};

/// Choice rules and constraints are handled natively (no desugaring):
/// M is an answer set iff M satisfies P and M is the least model of the
/// reduct, where {a1;...;am} :- B contributes ai :- B+ for ai ∈ M.
/// Minimality is checked twice (least fixpoint, and subset enumeration when
/// |M| <= 12); a disagreement throws std::logic_error.
AnswerSetCollection answer_sets_bruteforce(const Program& p, const OracleOptions& opts = {});

/// Answer-set test of a single total interpretation (true atoms = m).
bool is_answer_set(const Program& p, const AtomSet& m);

/// Coherence by direct recursion over the levels. Throws BudgetError.
bool coherence_bruteforce(const QuantifiedProgram& qp, const OracleOptions& opts = {});

/// Answer sets M of P1 whose suffix is coherent under fix(P1, M). Empty when
/// the first level is universal.
std::vector<AtomSet> quantified_answer_sets(const QuantifiedProgram& qp, const OracleOptions& opts = {});

} // namespace quantasp
