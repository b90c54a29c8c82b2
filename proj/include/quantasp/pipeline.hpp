#pragma once
// Encoding selection shared by the command line tool and the Python module.

#include <quantasp/eval.hpp>
#include <quantasp/solver.hpp>
#include <quantasp/stream.hpp>

#include <optional>
#include <string>
#include <vector>

namespace quantasp {

enum class EncodingChoice : std::uint8_t { Base, Wf, WfGc };

std::string    to_string(EncodingChoice e);
/// "base", "wf" or "wf+gc"; throws Error otherwise.
EncodingChoice parse_encoding(const std::string& s);

struct PipelineOptions {
    EncodingChoice encoding = EncodingChoice::Wf;
    /// Never apply the Guess&Check rewriting, even under wf+gc.
    bool           no_gc = false;
    LoopOptions    loops;
};

/// gc_chain(qp) when the program qualifies, otherwise nullopt with the
/// reason in `why`.
std::optional<QuantifiedProgram> try_gc_chain(const QuantifiedProgram& qp, std::string* why = nullptr);

/// The formula for `qp`: a circuit for base and wf, the direct CNF when
/// wf+gc applies. Falling back from wf+gc to wf adds a warning.
struct Prepared {
    std::optional<QbfCircuit> circuit;
    std::optional<PrenexCnf>  cnf;
    EncodingReport            report;
    bool                      used_gc = false;
    std::vector<std::string>  warnings;

    SolverInput solver_input() const;
};

Prepared prepare(const QuantifiedProgram& qp, const PipelineOptions& opts = {});

/// Streaming counterpart of prepare() followed by emission.
CompileStats compile(const QuantifiedProgram& qp, const PipelineOptions& opts, QbfFormat format, std::ostream& out,
                     std::vector<std::string>* warnings = nullptr);

/// eval_qbf on the prepared formula; UNKNOWN with a diagnostic when the
/// evaluator's bound is exceeded.
SolveOutcome solve_internal(const Prepared& p, const EvalOptions& opts = {});

} // namespace quantasp
