#pragma once
// Level-by-level compilation straight to a QCIR or QDIMACS stream.
//
// Each level's clauses are spooled to a temporary file as soon as the level
// is encoded, so only one level CNF is held in memory. The bytes written are
// identical to the in-memory route:
//   compile_to_stream      == emit_qcir(c) / emit_qdimacs(prenex_cnf(c))
//                             with c = build_circuit(qp, opts).circuit
//   compile_cnf_to_stream  == emit_qdimacs(f) / emit_qcir(to_circuit(f))
//                             with f = build_phi_k_cnf(qp, mode).qbf

#include <quantasp/formats.hpp>
#include <quantasp/qbf.hpp>

#include <iosfwd>

namespace quantasp {

struct CompileStats {
    EncodingReport report;
    std::uint32_t  num_vars      = 0; // as written in the header
    std::uint32_t  matrix_vars   = 0; // before any Tseytin selectors
    std::uint64_t  gates         = 0;
    std::uint64_t  clauses       = 0; // QDIMACS only
    std::uint32_t  tseytin_vars  = 0;
};

CompileStats compile_to_stream(const QuantifiedProgram& qp, const EncodeOptions& opts, QbfFormat format,
                               std::ostream& out);

/// Throws ProgramError if a universal level is not trivial.
CompileStats compile_cnf_to_stream(const QuantifiedProgram& qp, EncodingMode mode, QbfFormat format,
                                   std::ostream& out, const LoopOptions& loops = {});

} // namespace quantasp
