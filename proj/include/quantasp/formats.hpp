#pragma once
// QCIR-G14 and QDIMACS, plus the circuit-to-prenex-CNF conversion.

#include <quantasp/circuit.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace quantasp {

enum class QbfFormat : std::uint8_t { Qcir, Qdimacs };

std::string to_string(QbfFormat f);
/// "qcir" or "qdimacs"; throws FormatError otherwise.
QbfFormat   parse_format(std::string_view s);

/// Gate g is printed as num_vars + g + 1, so equal circuits give equal bytes.
std::string emit_qcir(const QbfCircuit& c);
void        emit_qcir(const QbfCircuit& c, std::ostream& out);

/// Accepts and/or gates with numeric identifiers. Gates are renumbered in
/// definition order; num_vars is max(largest variable, first gate id - 1).
/// Throws FormatError.
QbfCircuit parse_qcir(std::string_view text);

/// Adjacent blocks with the same quantifier are merged and empty ones skipped.
std::string emit_qdimacs(const PrenexCnf& f);
void        emit_qdimacs(const PrenexCnf& f, std::ostream& out);
PrenexCnf   parse_qdimacs(std::string_view text);

/// Tseytin with one selector per gate, in polarity-aware form: a gate used
/// only positively gets the clauses for s -> gate, only negatively those for
/// gate -> s. Selectors are numbered num_vars + g + 1 and go in the
/// innermost existential block.
PrenexCnf prenex_cnf(const QbfCircuit& c);

/// The matrix as an And of Or gates.
QbfCircuit to_circuit(const PrenexCnf& f);

} // namespace quantasp
