#pragma once
// From quantified programs to QBFs: Φ, Φ^WF, Φ^K and the direct CNF form.
//
// Variables are numbered by atom id + 1 in a private copy of the program's
// symbol table. Body auxiliaries and the φ_i gate variables are added to that
// table as fresh atoms, so every variable has a printable name.

#include <quantasp/circuit.hpp>
#include <quantasp/cnf.hpp>
#include <quantasp/program.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace quantasp {

enum class EncodingMode : std::uint8_t { Base, WellFounded };

struct EncodeOptions {
    EncodingMode mode = EncodingMode::Base;
    /// Leave trivial levels out of the matrix (Φ^K).
    bool         omit_trivial = false;
    /// Truncate at the first level whose CNF is found incoherent (WF mode only).
    bool         prune = true;
    std::size_t  incoherence_limit = 20;
    LoopOptions  loops;
};

struct LevelReport {
    std::size_t level = 0; // n+1 is the constraint program
    Quantifier  quantifier = Quantifier::Exists;
    std::size_t clauses  = 0;
    std::size_t vars     = 0;
    std::size_t aux_vars = 0;
    bool        trivial  = false;
    bool        pruned   = false;
};

struct EncodingReport {
    std::vector<LevelReport>  levels;
    std::optional<std::size_t> pruned_at;
    /// Set when the whole encoding collapsed to a constant.
    std::optional<bool>       constant_result;
};

/// G_i (Base) or G^WF_i (WellFounded) before desugaring; i = n+1 is C.
/// Built over qp's own symbol table.
Program build_intermediate(const QuantifiedProgram& qp, std::size_t i, EncodingMode mode);

struct WfLevel {
    std::size_t                  level = 0; // n+1 is C
    Quantifier                   quantifier = Quantifier::Exists;
    PartialInterpretation        model;     // W of the desugared G_i
    Program                      residual;  // its residual, i.e. G^WF_i
    bool                         trivially_incoherent = false;
    std::shared_ptr<SymbolTable> symbols;
};

/// Well-founded model and residual of every G_i, as used by Φ^WF.
std::vector<WfLevel> well_founded_levels(const QuantifiedProgram& qp);

/// One level's contribution, in global variables.
struct LevelEncoding {
    std::size_t         level = 0;
    Quantifier          quantifier = Quantifier::Exists; // Exists for C
    std::vector<Clause> clauses;
    std::uint32_t       phi = 0; // 0 when no gate variable was requested
};

/// φ_c operand: a level's gate variable, or the pruning constant.
struct PhiTerm {
    Quantifier    quantifier = Quantifier::Exists;
    std::uint32_t phi = 0;
    bool          is_constant = false;
    bool          value = false;
};

struct LevelPipelineResult {
    Prefix                       prefix; // level blocks, empty ones dropped
    std::vector<std::uint32_t>   gate_vars;
    std::vector<PhiTerm>         terms;
    std::uint32_t                num_vars = 0;
    std::shared_ptr<SymbolTable> symbols;
    EncodingReport               report;
};

/// Level-by-level pipeline: builds G_i, encodes it and hands the level's
/// clauses to `sink` before moving on, so at most one level CNF is alive.
LevelPipelineResult encode_levels(const QuantifiedProgram& qp, const EncodeOptions& opts, bool gate_vars,
                                  const std::function<void(LevelEncoding&&)>& sink);

/// Incremental construction of the matrix ⋀ (φ_i ↔ CNF_i) ∧ φ_c against an
/// arbitrary gate store.
class MatrixBuilder {
public:
    using AddGate = std::function<Signal(GateKind, std::vector<Signal>)>;
    explicit MatrixBuilder(AddGate add)
        : add_(std::move(add)) {}

    void   add_level(const LevelEncoding& level);
    /// Builds φ_c from the terms and the output conjunction.
    Signal finish(const std::vector<PhiTerm>& terms);

private:
    AddGate             add_;
    std::vector<Signal> equivalences_;
};

struct Encoding {
    QbfCircuit                   circuit;
    EncodingReport               report;
    std::shared_ptr<SymbolTable> symbols;
};

Encoding build_phi(const QuantifiedProgram& qp, const LoopOptions& loops = {});
Encoding build_phi_wf(const QuantifiedProgram& qp, const EncodeOptions& opts = {.mode = EncodingMode::WellFounded});
Encoding build_phi_k(const QuantifiedProgram& qp, const LoopOptions& loops = {});
/// Generic entry point behind the three above.
Encoding build_circuit(const QuantifiedProgram& qp, const EncodeOptions& opts);

struct CnfEncoding {
    PrenexCnf                    qbf;
    EncodingReport               report;
    std::shared_ptr<SymbolTable> symbols;
};

/// Prefix as in Φ^K, matrix the plain conjunction of the non-trivial level
/// CNFs. Throws ProgramError if a universal level is not trivial.
CnfEncoding build_phi_k_cnf(const QuantifiedProgram& qp, EncodingMode mode = EncodingMode::Base,
                            const LoopOptions& loops = {});

/// Levels 1..n treated as trivial by Φ^K.
std::vector<std::size_t> trivial_levels(const QuantifiedProgram& qp);

} // namespace quantasp
