// quantasp: compile, solve and inspect ASP(Q) programs.

#include <quantasp/features.hpp>
#include <quantasp/gc.hpp>
#include <quantasp/oracle.hpp>
#include <quantasp/pipeline.hpp>
#include <quantasp/textio.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace quantasp;

namespace {

constexpr int kCoherent   = 10;
constexpr int kIncoherent = 20;
constexpr int kUnknown    = 30;
constexpr int kMismatch   = 3;
constexpr int kUsage      = 2;
constexpr int kInput      = 1;

/// Raised for unreadable or malformed inputs (exit 1).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QuantifiedProgram load(const std::string& path) {
    auto text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    } catch (const ProgramError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void print_report(std::ostream& err, const EncodingReport& r) {
    for (const auto& l : r.levels) {
        err << "level " << l.level << " " << to_string(l.quantifier) << ": clauses=" << l.clauses
            << " vars=" << l.vars << " aux=" << l.aux_vars << (l.trivial ? " trivial" : "")
            << (l.pruned ? " pruned" : "") << "\n";
    }
    if (r.pruned_at) {
        err << "pruned_at=" << *r.pruned_at << "\n";
    }
    if (r.constant_result) {
        err << "constant_result=" << (*r.constant_result ? "TRUE" : "FALSE") << "\n";
    }
}

int exit_for(SolveResult r) {
    switch (r) {
        case SolveResult::Sat: return kCoherent;
        case SolveResult::Unsat: return kIncoherent;
        case SolveResult::Unknown: break;
    }
    return kUnknown;
}

const char* verdict(SolveResult r) {
    switch (r) {
        case SolveResult::Sat: return "COHERENT";
        case SolveResult::Unsat: return "INCOHERENT";
        case SolveResult::Unknown: break;
    }
    return "UNKNOWN";
}

std::vector<SelectionRule> selection_table(const std::string& path) {
    return path.empty() ? default_selection_table() : parse_selection_table(read_file(path));
}

std::vector<SolverSpec> solver_specs(const std::string& config) {
    auto path = solver_config_path(config.empty() ? std::nullopt : std::optional<std::filesystem::path>(config));
    if (!path) {
        return {};
    }
    return load_solver_config(*path);
}

struct CompileArgs {
    std::string input;
    std::string encoding = "wf";
    std::string format   = "qdimacs";
    std::string output   = "-";
    bool        no_gc    = false;
};

int run_compile(const CompileArgs& a) {
    auto                     qp = load(a.input);
    PipelineOptions          opts{parse_encoding(a.encoding), a.no_gc};
    auto                     format = parse_format(a.format);
    std::vector<std::string> warnings;
    CompileStats             stats;
    if (a.output == "-") {
        stats = compile(qp, opts, format, std::cout, &warnings);
    } else {
        std::ofstream out(a.output, std::ios::binary);
        if (!out) {
            throw InputError("cannot write " + a.output);
        }
        stats = compile(qp, opts, format, out, &warnings);
        if (!out.flush()) {
            throw InputError("cannot write " + a.output);
        }
    }
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    print_report(std::cerr, stats.report);
    std::cerr << "vars=" << stats.num_vars << " matrix_vars=" << stats.matrix_vars
              << " tseytin_vars=" << stats.tseytin_vars << " gates=" << stats.gates;
    if (format == QbfFormat::Qdimacs) {
        std::cerr << " clauses=" << stats.clauses;
    }
    std::cerr << "\n";
    return 0;
}

struct SolveArgs {
    std::string input;
    std::string encoding = "wf";
    std::string backend  = "auto";
    std::string config;
    std::string selection;
    std::size_t max_vars = 64;
    bool        no_gc    = false;
    bool        verbose  = false;
};

int run_solve(const SolveArgs& a) {
    auto qp       = load(a.input);
    auto prepared = prepare(qp, {parse_encoding(a.encoding), a.no_gc});
    for (const auto& w : prepared.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (a.verbose) {
        print_report(std::cerr, prepared.report);
    }
    auto specs   = a.backend == "internal" ? std::vector<SolverSpec>{} : solver_specs(a.config);
    auto backend = a.backend;
    if (backend == "auto") {
        backend = select_backend(extract_features(qp), selection_table(a.selection));
        if (a.verbose) {
            std::cerr << "selected back-end: " << backend << "\n";
        }
        if (specs.empty()) {
            backend = "internal";
        } else if (std::none_of(specs.begin(), specs.end(), [&](const SolverSpec& s) { return s.name == backend; })) {
            backend = "portfolio";
        }
    }
    SolveOutcome outcome;
    if (backend == "internal") {
        outcome = solve_internal(prepared, {a.max_vars});
    } else if (backend == "portfolio") {
        if (specs.empty()) {
            throw InputError("portfolio requested but no solvers are configured");
        }
        outcome = run_portfolio(specs, prepared.solver_input());
    } else {
        auto it = std::find_if(specs.begin(), specs.end(), [&](const SolverSpec& s) { return s.name == backend; });
        if (it == specs.end()) {
            throw InputError("no configured solver named '" + backend + "'");
        }
        outcome = run_external(*it, prepared.solver_input());
    }
    std::cout << verdict(outcome.result) << "\n";
    if (a.verbose || outcome.result == SolveResult::Unknown) {
        std::cerr << "backend=" << outcome.backend << " time=" << outcome.wall_time << "s";
        if (!outcome.diagnostic.empty()) {
            std::cerr << " (" << outcome.diagnostic << ")";
        }
        std::cerr << "\n";
    }
    return exit_for(outcome.result);
}

struct CheckArgs {
    std::vector<std::string> inputs;
    std::size_t              max_vars = 64;
    bool                     quiet    = false;
};

int run_check(const CheckArgs& a) {
    int  status     = 0;
    auto name       = [](bool b) { return b ? "COHERENT" : "INCOHERENT"; };
    for (const auto& path : a.inputs) {
        auto qp = load(path);
        bool expected;
        try {
            expected = coherence_bruteforce(qp);
        } catch (const BudgetError& e) {
            std::cout << path << ": skipped (" << e.what() << ")\n";
            status = std::max(status, 4);
            continue;
        }
        std::ostringstream line;
        line << path << ": oracle=" << name(expected);
        bool mismatch = false, unknown = false;
        auto record   = [&](const char* label, auto&& run) {
            try {
                bool got = run();
                line << " " << label << "=" << name(got);
                mismatch |= got != expected;
            } catch (const BudgetError&) {
                line << " " << label << "=UNKNOWN";
                unknown = true;
            }
        };
        EvalOptions eo{a.max_vars};
        record("base", [&] { return eval_qbf(build_phi(qp).circuit, eo); });
        record("wf", [&] { return eval_qbf(build_phi_wf(qp).circuit, eo); });
        record("k", [&] { return eval_qbf(build_phi_k(qp).circuit, eo); });
        if (auto chain = try_gc_chain(qp)) {
            record("gc", [&] { return coherence_bruteforce(*chain); });
            record("kcnf", [&] { return eval_qbf(build_phi_k_cnf(*chain, EncodingMode::WellFounded).qbf, eo); });
        }
        line << (mismatch ? " MISMATCH" : unknown ? " INCOMPLETE" : " OK");
        if (mismatch || unknown || !a.quiet) {
            std::cout << line.str() << "\n";
        }
        if (mismatch) {
            status = kMismatch;
        } else if (unknown && status == 0) {
            status = 4;
        }
    }
    return status;
}

int run_wf(const std::string& input, bool all_atoms) {
    auto qp = load(input);
    for (const auto& l : well_founded_levels(qp)) {
        PartialInterpretation shown;
        for (auto atom : l.model.base()) {
            if (l.model.decided(atom) && (all_atoms || l.symbols->kind(atom) == AtomKind::User)) {
                shown.set(atom, l.model.value(atom));
            }
        }
        std::cout << "% level " << l.level << " ("
                  << (l.level > qp.size() ? std::string("constraint") : to_string(l.quantifier)) << ")\n";
        std::cout << "W = " << render(shown, *l.symbols) << "\n";
        if (l.trivially_incoherent) {
            std::cout << "% incoherent\n";
        }
        std::cout << render(l.residual);
    }
    return 0;
}

int run_features(const std::string& input, bool json) {
    auto f = extract_features(load(input));
    if (json) {
        std::cout << f.to_json() << "\n";
        return 0;
    }
    for (const auto& [k, v] : f.entries()) {
        std::cout << k << " " << v << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compile and solve quantified answer set programs"};
    app.require_subcommand(1);

    CompileArgs ca;
    auto*       compile_cmd = app.add_subcommand("compile", "Encode a program as a QBF");
    compile_cmd->add_option("input", ca.input, "Program file (- for stdin)")->required();
    compile_cmd->add_option("--encoding", ca.encoding, "base, wf or wf+gc")
        ->check(CLI::IsMember({"base", "wf", "wf+gc"}))
        ->capture_default_str();
    compile_cmd->add_option("--format", ca.format, "qcir or qdimacs")
        ->check(CLI::IsMember({"qcir", "qdimacs"}))
        ->capture_default_str();
    compile_cmd->add_option("-o,--output", ca.output, "Output file (- for stdout)")->capture_default_str();
    compile_cmd->add_flag("--no-gc", ca.no_gc, "Never apply the Guess&Check rewriting");

    SolveArgs sa;
    auto*     solve_cmd = app.add_subcommand("solve", "Decide coherence (exit 10 coherent, 20 incoherent, 30 unknown)");
    solve_cmd->add_option("input", sa.input, "Program file (- for stdin)")->required();
    solve_cmd->add_option("--encoding", sa.encoding, "base, wf or wf+gc")
        ->check(CLI::IsMember({"base", "wf", "wf+gc"}))
        ->capture_default_str();
    solve_cmd->add_option("--backend", sa.backend, "Solver name, auto, portfolio or internal")->capture_default_str();
    solve_cmd->add_option("--solvers", sa.config, "Solver config JSON (default: $QUANTASP_SOLVERS)");
    solve_cmd->add_option("--selection", sa.selection, "Back-end selection table JSON");
    solve_cmd->add_option("--max-vars", sa.max_vars, "Variable bound of the internal evaluator")
        ->capture_default_str();
    solve_cmd->add_flag("--no-gc", sa.no_gc, "Never apply the Guess&Check rewriting");
    solve_cmd->add_flag("-v,--verbose", sa.verbose, "Print the encoding report and timing");

    CheckArgs ka;
    auto*     check_cmd = app.add_subcommand("check", "Compare the brute-force oracle with every encoding");
    check_cmd->add_option("inputs", ka.inputs, "Program files")->required();
    check_cmd->add_option("--max-vars", ka.max_vars, "Variable bound of the internal evaluator")
        ->capture_default_str();
    check_cmd->add_flag("-q,--quiet", ka.quiet, "Only print mismatches and incomplete checks");

    std::string wf_input;
    bool        wf_all = false;
    auto*       wf_cmd = app.add_subcommand("wf", "Print well-founded models and residuals per level");
    wf_cmd->add_option("input", wf_input, "Program file (- for stdin)")->required();
    wf_cmd->add_flag("--all", wf_all, "Include generated atoms in W");

    std::string feat_input;
    bool        feat_json = false;
    auto*       feat_cmd  = app.add_subcommand("features", "Print the program features");
    feat_cmd->add_option("input", feat_input, "Program file (- for stdin)")->required();
    feat_cmd->add_flag("--json", feat_json, "JSON object output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*compile_cmd) {
            return run_compile(ca);
        }
        if (*solve_cmd) {
            return run_solve(sa);
        }
        if (*check_cmd) {
            return run_check(ka);
        }
        if (*wf_cmd) {
            return run_wf(wf_input, wf_all);
        }
        if (*feat_cmd) {
            return run_features(feat_input, feat_json);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}
