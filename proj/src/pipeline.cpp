#include <quantasp/pipeline.hpp>

#include <quantasp/gc.hpp>

#include <algorithm>
#include <chrono>

namespace quantasp {

std::string to_string(EncodingChoice e) {
    switch (e) {
        case EncodingChoice::Base: return "base";
        case EncodingChoice::Wf: return "wf";
        case EncodingChoice::WfGc: break;
    }
    return "wf+gc";
}

EncodingChoice parse_encoding(const std::string& s) {
    if (s == "base") {
        return EncodingChoice::Base;
    }
    if (s == "wf") {
        return EncodingChoice::Wf;
    }
    if (s == "wf+gc") {
        return EncodingChoice::WfGc;
    }
    throw Error("unknown encoding '" + s + "' (expected base, wf or wf+gc)");
}

std::optional<QuantifiedProgram> try_gc_chain(const QuantifiedProgram& qp, std::string* why) {
    if (!is_gc_program(qp, why)) {
        return std::nullopt;
    }
    std::optional<QuantifiedProgram> chain;
    try {
        chain = gc_chain(qp);
    } catch (const GcError& e) {
        if (why != nullptr) {
            *why = e.what();
        }
        return std::nullopt;
    }
    auto trivial = trivial_levels(*chain);
    for (std::size_t i = 1; i <= chain->size(); ++i) {
        if (chain->level(i).quantifier == Quantifier::Forall &&
            std::find(trivial.begin(), trivial.end(), i) == trivial.end()) {
            if (why != nullptr) {
                *why = "universal level " + std::to_string(i) + " is not trivial after rewriting";
            }
            return std::nullopt;
        }
    }
    return chain;
}

SolverInput Prepared::solver_input() const { return cnf ? SolverInput(*cnf) : SolverInput(*circuit); }

namespace {

EncodeOptions encode_options(const PipelineOptions& opts) {
    EncodeOptions o;
    o.mode  = opts.encoding == EncodingChoice::Base ? EncodingMode::Base : EncodingMode::WellFounded;
    o.loops = opts.loops;
    return o;
}

/// The rewritten program when wf+gc applies; records a warning otherwise.
std::optional<QuantifiedProgram> gc_target(const QuantifiedProgram& qp, const PipelineOptions& opts,
                                           std::vector<std::string>& warnings) {
    if (opts.encoding != EncodingChoice::WfGc || opts.no_gc) {
        return std::nullopt;
    }
    std::string why;
    auto        chain = try_gc_chain(qp, &why);
    if (!chain) {
        warnings.push_back("Guess&Check rewriting not applicable (" + why + "); using wf");
    }
    return chain;
}

} // namespace

Prepared prepare(const QuantifiedProgram& qp, const PipelineOptions& opts) {
    Prepared out;
    if (auto chain = gc_target(qp, opts, out.warnings)) {
        auto enc    = build_phi_k_cnf(*chain, EncodingMode::WellFounded, opts.loops);
        out.cnf     = std::move(enc.qbf);
        out.report  = std::move(enc.report);
        out.used_gc = true;
        return out;
    }
    auto enc    = build_circuit(qp, encode_options(opts));
    out.circuit = std::move(enc.circuit);
    out.report  = std::move(enc.report);
    return out;
}

CompileStats compile(const QuantifiedProgram& qp, const PipelineOptions& opts, QbfFormat format, std::ostream& out,
                     std::vector<std::string>* warnings) {
    std::vector<std::string> local;
    auto&                    w = warnings != nullptr ? *warnings : local;
    if (auto chain = gc_target(qp, opts, w)) {
        return compile_cnf_to_stream(*chain, EncodingMode::WellFounded, format, out, opts.loops);
    }
    return compile_to_stream(qp, encode_options(opts), format, out);
}

SolveOutcome solve_internal(const Prepared& p, const EvalOptions& opts) {
    SolveOutcome out;
    out.backend = "internal";
    auto start  = std::chrono::steady_clock::now();
    try {
        bool sat   = p.cnf ? eval_qbf(*p.cnf, opts) : eval_qbf(*p.circuit, opts);
        out.result = sat ? SolveResult::Sat : SolveResult::Unsat;
    } catch (const BudgetError& e) {
        out.diagnostic = e.what();
    }
    out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace quantasp
