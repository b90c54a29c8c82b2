#include "helpers.hpp"

#include <quantasp/solver.hpp>

#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace quantasp;

namespace {

SolverInput tiny() {
    QbfCircuit c;
    c.num_vars = 1;
    c.prefix   = {{Quantifier::Exists, {1}}};
    c.output   = c.add_and({Signal::var(1)});
    return SolverInput(std::move(c));
}

SolverSpec spec(std::string name, std::string command, double timeout = 5) {
    SolverSpec s;
    s.name      = std::move(name);
    s.command   = std::move(command);
    s.timeout_s = timeout;
    return s;
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(spec("a", "cat {input}").validate());
    CHECK_THROWS_AS(spec("", "cat {input}").validate(), SolverError);
    CHECK_THROWS_AS(spec("a", "true").validate(), SolverError);
    CHECK_THROWS_AS(spec("a", "cat {input} {input}").validate(), SolverError);
    CHECK_THROWS_AS(spec("a", "cat {input}", 0).validate(), SolverError);
    auto s       = spec("a", "cat {input}");
    s.unsat_exit = {10};
    CHECK_THROWS_AS(s.validate(), SolverError);
}

TEST_CASE("config parsing") {
    auto specs = parse_solver_config(R"({"solvers":[
        {"name":"x","command":"x {input}","format":"qcir","sat_exit":[10,0],"unsat_exit":[20],"timeout_s":3},
        {"name":"y","command":"y {input}"}]})");
    REQUIRE(specs.size() == 2);
    CHECK(specs[0].format == QbfFormat::Qcir);
    CHECK(specs[0].sat_exit == std::vector<int>{10, 0});
    CHECK(specs[0].timeout_s == 3);
    CHECK(specs[1].format == QbfFormat::Qdimacs);
    CHECK(specs[1].timeout_s == 800);
    CHECK_THROWS_AS(parse_solver_config("{"), SolverError);
    CHECK_THROWS_AS(parse_solver_config(R"({"solvers":[{"name":"x"}]})"), SolverError);
    CHECK_THROWS_AS(parse_solver_config(R"({"solvers":[{"name":"x","command":"x {input}","format":"aig"}]})"),
                    SolverError);
}

TEST_CASE("exit codes map to results") {
    auto in = tiny();
    CHECK(run_external(spec("s", "exit 10 # {input}"), in).result == SolveResult::Sat);
    CHECK(run_external(spec("u", "exit 20 # {input}"), in).result == SolveResult::Unsat);
    auto other = run_external(spec("o", "exit 3 # {input}"), in);
    CHECK(other.result == SolveResult::Unknown);
    CHECK(other.diagnostic.find("unmapped exit code 3") != std::string::npos);
}

TEST_CASE("the formula reaches the solver") {
    auto in = tiny();
    auto q  = spec("q", "grep -q '^p cnf' {input} && exit 10 || exit 20");
    CHECK(run_external(q, in).result == SolveResult::Sat);
    auto c   = spec("c", "grep -q '^#QCIR-G14' {input} && exit 10 || exit 20");
    c.format = QbfFormat::Qcir;
    CHECK(run_external(c, in).result == SolveResult::Sat);
}

TEST_CASE("timeouts give unknown") {
    auto in    = tiny();
    auto start = std::chrono::steady_clock::now();
    auto r     = run_external(spec("sleepy", "sleep 30 # {input}", 0.3), in);
    auto took  = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.result == SolveResult::Unknown);
    CHECK(r.diagnostic.find("timeout") != std::string::npos);
    CHECK(took < 1.5);
}

TEST_CASE("portfolio takes the first conclusive answer") {
    auto in    = tiny();
    auto start = std::chrono::steady_clock::now();
    auto r     = run_portfolio({spec("slow", "sleep 30 # {input}"), spec("fast", "sleep 0.1; exit 20 # {input}")}, in);
    auto took  = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.result == SolveResult::Unsat);
    CHECK(r.backend == "fast");
    CHECK(took < 2);

    auto none = run_portfolio({spec("a", "exit 1 # {input}"), spec("b", "exit 2 # {input}")}, in);
    CHECK(none.result == SolveResult::Unknown);
    CHECK(none.diagnostic.find("a: ") != std::string::npos);
    CHECK(none.diagnostic.find("b: ") != std::string::npos);
}

TEST_CASE("config path from the environment") {
    auto path = std::filesystem::temp_directory_path() / "quantasp_solvers_test.json";
    std::ofstream(path) << R"({"solvers":[]})";
    ::setenv("QUANTASP_SOLVERS", path.c_str(), 1);
    CHECK(solver_config_path() == path);
    ::unsetenv("QUANTASP_SOLVERS");
    CHECK(solver_config_path(path) == path);
    CHECK(load_solver_config(path).empty());
    std::filesystem::remove(path);
}
