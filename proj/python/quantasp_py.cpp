#include <quantasp/features.hpp>
#include <quantasp/gc.hpp>
#include <quantasp/oracle.hpp>
#include <quantasp/pipeline.hpp>
#include <quantasp/textio.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace quantasp;

namespace {

PipelineOptions options(const std::string& encoding, bool no_gc) {
    PipelineOptions o;
    o.encoding = parse_encoding(encoding);
    o.no_gc    = no_gc;
    return o;
}

py::dict report_dict(const EncodingReport& r) {
    py::list levels;
    for (const auto& l : r.levels) {
        py::dict d;
        d["level"]   = l.level;
        d["clauses"] = l.clauses;
        d["vars"]    = l.vars;
        d["aux"]     = l.aux_vars;
        d["trivial"] = l.trivial;
        d["pruned"]  = l.pruned;
        levels.append(d);
    }
    py::dict out;
    out["levels"]          = levels;
    out["pruned_at"]       = r.pruned_at ? py::cast(*r.pruned_at) : py::none();
    out["constant_result"] = r.constant_result ? py::cast(*r.constant_result) : py::none();
    return out;
}

std::vector<std::string> sorted_names(const AtomSet& s, const SymbolTable& t, bool user_only) {
    std::vector<std::string> out;
    for (auto a : s) {
        if (!user_only || t.kind(a) == AtomKind::User) {
            out.push_back(t.name(a));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string verdict(SolveResult r) {
    switch (r) {
    case SolveResult::Sat: return "COHERENT";
    case SolveResult::Unsat: return "INCOHERENT";
    default: return "UNKNOWN";
    }
}

} // namespace

PYBIND11_MODULE(_quantasp, m) {
    m.doc() = "Quantified answer set programs: encodings, oracle and tools";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ProgramError>(m, "ProgramError", base.ptr());
    py::register_exception<GcError>(m, "GcError", base.ptr());
    py::register_exception<BudgetError>(m, "BudgetError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());

    m.def("normalize", [](const std::string& text) { return render(parse(text)); }, py::arg("text"),
          "Parse a program and print it back in canonical form.");

    m.def("answer_sets",
          [](const std::string& text) {
              auto                                  p = parse_program(text);
              std::vector<std::vector<std::string>> out;
              for (const auto& s : answer_sets_bruteforce(p).models) {
                  out.push_back(sorted_names(s, p.symbols(), true));
              }
              std::sort(out.begin(), out.end());
              return out;
          },
          py::arg("text"), "Answer sets of a plain program by brute force.");

    m.def("coherent", [](const std::string& text) { return coherence_bruteforce(parse(text)); }, py::arg("text"),
          "Coherence of a quantified program by brute force.");

    m.def("well_founded",
          [](const std::string& text, bool all) {
              py::list out;
              auto     levels = well_founded_levels(parse(text));
              for (const auto& l : levels) {
                  py::dict d;
                  d["level"]      = l.level;
                  d["quantifier"] = l.level == levels.size()                ? "constraint"
                                    : l.quantifier == Quantifier::Forall ? "forall"
                                                                          : "exists";
                  d["true"]       = sorted_names(l.model.true_atoms(), *l.symbols, !all);
                  d["false"]      = sorted_names(l.model.false_atoms(), *l.symbols, !all);
                  d["residual"]   = render(l.residual);
                  d["incoherent"] = l.trivially_incoherent;
                  out.append(d);
              }
              return out;
          },
          py::arg("text"), py::arg("all") = false,
          "Well-founded model and residual of every level, the constraint program last.");

    m.def("gc_chain", [](const std::string& text) { return render(gc_chain(parse(text))); }, py::arg("text"),
          "Apply the Guess&Check rewriting to every universal level.");

    m.def("compile",
          [](const std::string& text, const std::string& encoding, const std::string& format, bool no_gc) {
              std::ostringstream       out;
              std::vector<std::string> warnings;
              auto stats = quantasp::compile(parse(text), options(encoding, no_gc), parse_format(format), out, &warnings);
              auto rep   = report_dict(stats.report);
              rep["vars"]         = stats.num_vars;
              rep["tseytin_vars"] = stats.tseytin_vars;
              rep["warnings"]     = warnings;
              return py::make_tuple(out.str(), rep);
          },
          py::arg("text"), py::arg("encoding") = "wf", py::arg("format") = "qdimacs", py::arg("no_gc") = false,
          "Encode a program as QCIR or QDIMACS; returns (formula, report).");

    m.def("solve",
          [](const std::string& text, const std::string& encoding, std::size_t max_vars, bool no_gc) {
              auto prepared = prepare(parse(text), options(encoding, no_gc));
              return verdict(solve_internal(prepared, {.max_vars = max_vars}).result);
          },
          py::arg("text"), py::arg("encoding") = "wf", py::arg("max_vars") = 64, py::arg("no_gc") = false,
          "Decide coherence with the internal evaluator: COHERENT, INCOHERENT or UNKNOWN.");

    m.def("solve_external",
          [](const std::string& text, const std::string& config, const std::string& backend,
             const std::string& encoding) {
              auto specs    = load_solver_config(config);
              auto prepared = prepare(parse(text), options(encoding, false));
              auto input    = prepared.solver_input();
              SolveOutcome r;
              if (backend == "portfolio") {
                  r = run_portfolio(specs, input);
              } else {
                  auto it = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == backend; });
                  if (it == specs.end()) {
                      throw SolverError("no solver named '" + backend + "'");
                  }
                  r = run_external(*it, input);
              }
              return py::make_tuple(verdict(r.result), r.backend, r.diagnostic);
          },
          py::arg("text"), py::arg("config"), py::arg("backend") = "portfolio", py::arg("encoding") = "wf",
          "Run configured QBF solvers; returns (verdict, backend, diagnostic).");

    m.def("features",
          [](const std::string& text) {
              py::dict out;
              auto     f = extract_features(parse(text));
              for (const auto& [k, v] : f.entries()) {
                  out[py::str(k)] = v;
              }
              return out;
          },
          py::arg("text"), "The 21 program features, in order.");

    m.def("select_backend",
          [](const std::string& text, const std::optional<std::string>& table) {
              auto f = extract_features(parse(text));
              return select_backend(f, table ? parse_selection_table(*table) : default_selection_table());
          },
          py::arg("text"), py::arg("table") = py::none(), "Back-end name chosen by a selection table (JSON).");
}
