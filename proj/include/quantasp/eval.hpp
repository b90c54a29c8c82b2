#pragma once
// Exact QBF evaluation for small formulas. Not a competitive solver.

#include <quantasp/circuit.hpp>

#include <cstdint>

namespace quantasp {

struct EvalOptions {
    /// Maximum number of variables occurring in the matrix.
    std::size_t max_vars = 24;
};

struct EvalStats {
    std::uint64_t branches  = 0;
    std::uint64_t sat_calls = 0;
};

/// Expands the prefix outermost-first. Existential unit conjuncts and
/// universal unit disjuncts are assigned, universal unit conjuncts fail,
/// pure literals are fixed, innermost existentials defined by a lone
/// equivalence x ↔ Y are dropped, and the innermost existential block is
/// handed to a DPLL search. Unquantified variables count as outermost
/// existentials. Throws BudgetError above the variable bound.
bool eval_qbf(const QbfCircuit& c, const EvalOptions& opts = {}, EvalStats* stats = nullptr);
bool eval_qbf(const PrenexCnf& f, const EvalOptions& opts = {}, EvalStats* stats = nullptr);

/// Exhaustive expansion without any simplification; for cross-checking.
bool eval_qbf_naive(const QbfCircuit& c, std::size_t max_vars = 20);

} // namespace quantasp
