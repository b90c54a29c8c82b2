#pragma once
// Prenex quantified Boolean formulas: gate circuits and plain CNF.

#include <quantasp/cnf.hpp>
#include <quantasp/program.hpp>

#include <cstdint>
#include <vector>

namespace quantasp {

struct QuantBlock {
    Quantifier                 quantifier = Quantifier::Exists;
    std::vector<std::uint32_t> vars; // 1-based, ascending

    friend bool operator==(const QuantBlock&, const QuantBlock&) = default;
};

using Prefix = std::vector<QuantBlock>;

/// Edge into a gate: a variable (index = variable number) or a gate
/// (index = position in QbfCircuit::gates), possibly negated.
struct Signal {
    bool          gate    = false;
    std::uint32_t index   = 0;
    bool          negated = false;

    Signal operator!() const { return {gate, index, !negated}; }
    friend auto operator<=>(const Signal&, const Signal&) = default;

    static Signal var(std::uint32_t v, bool negated = false) { return {false, v, negated}; }
    static Signal lit(CnfLit l) { return {false, static_cast<std::uint32_t>(l < 0 ? -l : l), l < 0}; }
};

enum class GateKind : std::uint8_t { And, Or };

/// An empty And is true, an empty Or is false.
struct Gate {
    GateKind            kind = GateKind::And;
    std::vector<Signal> inputs; // refer to variables or earlier gates only

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct QbfCircuit {
    Prefix                     prefix;
    std::vector<Gate>          gates;
    Signal                     output;
    std::vector<std::uint32_t> gate_vars; // φ variables, innermost existential block
    std::uint32_t              num_vars = 0;

    friend bool operator==(const QbfCircuit&, const QbfCircuit&) = default;

    /// Appends a gate and returns a signal for it.
    Signal add(GateKind kind, std::vector<Signal> inputs);
    Signal add_and(std::vector<Signal> inputs) { return add(GateKind::And, std::move(inputs)); }
    Signal add_or(std::vector<Signal> inputs) { return add(GateKind::Or, std::move(inputs)); }
    Signal constant(bool value) { return add(value ? GateKind::And : GateKind::Or, {}); }

    /// Throws FormatError on forward gate references, duplicate quantification
    /// or variables beyond num_vars.
    void validate() const;
};

/// Prenex CNF over variables 1..num_vars.
struct PrenexCnf {
    Prefix              prefix;
    std::vector<Clause> clauses;
    std::uint32_t       num_vars = 0;

    friend bool operator==(const PrenexCnf&, const PrenexCnf&) = default;
};

/// Variables occurring in the prefix, in prefix order.
std::vector<std::uint32_t> quantified_vars(const Prefix& prefix);

/// Merges adjacent blocks with the same quantifier and drops empty ones.
Prefix normalize_prefix(Prefix prefix);

} // namespace quantasp
