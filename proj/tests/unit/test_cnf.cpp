#include "helpers.hpp"

#include <quantasp/generate.hpp>

#include <doctest.h>

using namespace quantasp;
using qt::NameSet;

namespace {

std::set<Clause> clause_set(const CnfFormula& f) { return {f.clauses().begin(), f.clauses().end()}; }

} // namespace

TEST_CASE("completion of an even loop") {
    auto p = qt::prog("a :- not b. b :- not a.");
    auto f = clark_completion(p);
    CHECK(f.num_vars() == 2);
    CHECK(clause_set(f) == std::set<Clause>{{1, 2}, {-1, -2}});
    CHECK(qt::cnf_models(f, p.symbols()) == qt::answer_sets(p));
}

TEST_CASE("completion of facts and odd loops") {
    auto a = qt::prog("a.");
    CHECK(clark_completion(a).clauses() == std::vector<Clause>{{1}});
    auto p = qt::prog("p :- not p.");
    auto f = cnf_encode(p);
    CHECK(clause_set(f) == std::set<Clause>{{1}, {-1}});
    CHECK(f.has_empty_clause() == false);
    CHECK(bounded_incoherence_check(f) == Verdict::True);
}

TEST_CASE("atoms without rules are false") {
    auto p = qt::prog("a :- b.");
    auto f = clark_completion(p);
    CHECK(qt::cnf_models(f, p.symbols()) == std::set<NameSet>{{}});
}

TEST_CASE("multi-literal bodies get auxiliaries") {
    auto p = qt::prog("a :- b, c. a :- d. {b;c;d}.");
    auto d = desugar(p);
    auto f = clark_completion(d);
    CHECK(f.aux_vars().size() == 1);
    CHECK(f.var(f.aux_vars().front()).name == "_t_a_1");
    CHECK(qt::cnf_models(f, d.symbols()) == qt::answer_sets(p));
}

TEST_CASE("constraints become clauses") {
    auto p = desugar(qt::prog("{a;b}. :- a, b."));
    auto f = cnf_encode(p);
    CHECK(f.eliminated_atoms().size() == 1);
    CHECK(qt::cnf_models(f, p.symbols()) == std::set<NameSet>{{}, {"a"}, {"b"}});
}

TEST_CASE("loop formulas") {
    auto p = qt::prog("a :- b. b :- a.");
    auto f = cnf_encode(p);
    CHECK(qt::cnf_models(f, p.symbols()) == std::set<NameSet>{{}});
    CHECK(enumerate_loops(p).size() == 1);

    auto q = qt::prog("a :- b. b :- a. a.");
    CHECK(qt::cnf_models(cnf_encode(q), q.symbols()) == std::set<NameSet>{{"a", "b"}});

    auto tight = qt::prog("a :- not b. c :- a.");
    CHECK(enumerate_loops(tight).empty());
    CHECK(loop_formulas(tight, clark_completion(tight)) == clark_completion(tight));
}

TEST_CASE("loop bound") {
    std::string text;
    for (int k = 0; k < 13; ++k) {
        text += "x" + std::to_string(k) + " :- x" + std::to_string((k + 1) % 13) + ".\n";
    }
    auto p = qt::prog(text);
    CHECK_THROWS_AS(cnf_encode(p), LoopBoundError);
    CHECK_NOTHROW(cnf_encode(p, {.max_scc_size = 13}));
}

TEST_CASE("first level of a two-level program") {
    auto qp = parse("%@exists\n{a;b}.\n:- a, not b.\n%@constraint\n");
    auto g  = desugar(qp.level(1).program);
    auto f  = cnf_encode(g);
    CHECK(f.clauses().size() == 5);
    CHECK(f.num_vars() == 4);
    CHECK(qt::cnf_models(f, g.symbols()) == std::set<NameSet>{{}, {"b"}, {"a", "b"}});
}

TEST_CASE("empty program") {
    auto f = cnf_encode(Program{});
    CHECK(f.clauses().empty());
    CHECK(bounded_incoherence_check(f) == Verdict::False);
}

TEST_CASE("bounded incoherence check") {
    CnfFormula a;
    a.add_clause({a.atom_var(0, "a")});
    CHECK(bounded_incoherence_check(a) == Verdict::False);

    // 30 variables in a satisfiable chain without units
    CnfFormula big;
    for (int k = 0; k < 30; ++k) {
        big.atom_var(static_cast<AtomId>(k), "x" + std::to_string(k));
    }
    for (int k = 1; k < 30; ++k) {
        big.add_clause({-k, k + 1});
    }
    CHECK(bounded_incoherence_check(big, 20) == Verdict::Unknown);
    CHECK(bounded_incoherence_check(big, 30) == Verdict::False);
}

TEST_CASE("clause normalization") {
    CnfFormula f;
    f.atom_var(0, "a");
    f.atom_var(1, "b");
    f.add_clause({2, 1, 2});
    f.add_clause({1, -1});
    f.add_clause({1, 2});
    CHECK(f.clauses() == std::vector<Clause>{{1, 2}});
}

TEST_CASE("model correspondence on random programs") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 300; ++k) {
        auto p = desugar(random_program(rng, 6, 7));
        auto f = cnf_encode(p);
        if (f.num_vars() > 22) {
            continue;
        }
        CHECK(qt::cnf_models(f, p.symbols()) == qt::answer_sets(p));
    }
}

TEST_CASE("encoding is deterministic") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 50; ++k) {
        auto p = desugar(random_program(rng, 6, 7));
        CHECK(cnf_encode(p) == cnf_encode(p));
    }
}
