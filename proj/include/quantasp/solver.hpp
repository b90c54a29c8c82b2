#pragma once
// External QBF solver processes: spec, config file, single run and portfolio.

#include <quantasp/formats.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace quantasp {

enum class SolveResult : std::uint8_t { Sat, Unsat, Unknown };

std::string to_string(SolveResult r);

struct SolverSpec {
    std::string      name;
    /// Shell command; `{input}` is replaced by the quoted formula path.
    std::string      command;
    QbfFormat        format = QbfFormat::Qdimacs;
    std::vector<int> sat_exit{10};
    std::vector<int> unsat_exit{20};
    double           timeout_s = 800;

    /// Throws SolverError on overlapping exit codes, a placeholder count
    /// other than one, an empty name or a non-positive timeout.
    void validate() const;
};

struct SolveOutcome {
    SolveResult result = SolveResult::Unknown;
    std::string backend;
    double      wall_time = 0;
    std::string diagnostic;
};

/// `{"solvers":[{"name":..,"command":..,"format":..,"sat_exit":[..],
/// "unsat_exit":[..],"timeout_s":..}]}`. Missing optional fields take the
/// SolverSpec defaults.
std::vector<SolverSpec> parse_solver_config(const std::string& json_text);
std::vector<SolverSpec> load_solver_config(const std::filesystem::path& path);

/// $QUANTASP_SOLVERS if set, else `fallback`.
std::optional<std::filesystem::path> solver_config_path(const std::optional<std::filesystem::path>& fallback = {});

/// The formula handed to solvers, rendered lazily per format. A direct CNF
/// is used as is for QDIMACS; otherwise the circuit is Tseytin-converted.
class SolverInput {
public:
    explicit SolverInput(QbfCircuit circuit);
    explicit SolverInput(PrenexCnf cnf);

    const std::string& text(QbfFormat f) const;

private:
    std::optional<QbfCircuit>          circuit_;
    std::optional<PrenexCnf>           cnf_;
    mutable std::optional<std::string> qcir_;
    mutable std::optional<std::string> qdimacs_;
};

SolveOutcome run_external(const SolverSpec& spec, const SolverInput& input);

/// Starts every spec at once. The first SAT/UNSAT outcome wins and the other
/// process groups are killed. Conflicting conclusive answers observed in the
/// same poll raise SolverError. UNKNOWN if nobody concludes.
SolveOutcome run_portfolio(const std::vector<SolverSpec>& specs, const SolverInput& input);

} // namespace quantasp
