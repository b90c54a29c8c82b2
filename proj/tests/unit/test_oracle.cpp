#include "helpers.hpp"

#include <quantasp/generate.hpp>

#include <doctest.h>

using namespace quantasp;
using qt::NameSet;

TEST_CASE("answer sets by brute force") {
    CHECK(qt::answer_sets(qt::prog("a :- not b. b :- not a.")) == std::set<NameSet>{{"a"}, {"b"}});
    CHECK(qt::answer_sets(qt::prog("p :- not p.")).empty());
    CHECK(qt::answer_sets(qt::prog("{a}.")) == std::set<NameSet>{{}, {"a"}});
    CHECK(qt::answer_sets(desugar(qt::prog("{a}."))) == std::set<NameSet>{{}, {"a"}});
    CHECK(qt::answer_sets(qt::prog("a :- b. b :- a.")) == std::set<NameSet>{{}});
    CHECK(qt::answer_sets(qt::prog("{a;b}. :- a, b. c :- a.")) == std::set<NameSet>{{}, {"a", "c"}, {"b"}});
}

TEST_CASE("single interpretation test") {
    auto p = qt::prog("a :- not b. b :- not a.");
    auto a = *p.symbols().find("a");
    auto b = *p.symbols().find("b");
    CHECK(is_answer_set(p, {a}));
    CHECK_FALSE(is_answer_set(p, {a, b}));
    CHECK_FALSE(is_answer_set(p, {}));
}

TEST_CASE("quantified coherence") {
    auto e = parse("%@exists\na :- not b.\nb :- not a.\n%@constraint\n:- a.\n");
    CHECK(coherence_bruteforce(e));
    auto qas = quantified_answer_sets(e);
    CHECK(qt::names(qas, e.symbols()) == std::set<NameSet>{{"b"}});

    auto f = parse("%@forall\na :- not b.\nb :- not a.\n%@constraint\n:- a.\n");
    CHECK_FALSE(coherence_bruteforce(f));
    CHECK(quantified_answer_sets(f).empty());

    auto vacuous = parse("%@forall\np :- not p.\n%@constraint\n:- p.\n");
    CHECK(coherence_bruteforce(vacuous));
}

TEST_CASE("two-level alternation") {
    // for every choice of x there is a y with x != y
    auto qp = parse("%@forall\n{x}.\n%@exists\n{y}.\n%@constraint\n:- x, y.\n:- not x, not y.\n");
    CHECK(coherence_bruteforce(qp));
    auto bad = parse("%@exists\n{y}.\n%@forall\n{x}.\n%@constraint\n:- x, y.\n:- not x, not y.\n");
    CHECK_FALSE(coherence_bruteforce(bad));
}

TEST_CASE("oracle budgets") {
    std::string text = "{";
    for (int k = 0; k < 22; ++k) {
        text += (k != 0 ? ";" : "") + std::string("x") + std::to_string(k);
    }
    text += "}.";
    CHECK_THROWS_AS(answer_sets_bruteforce(qt::prog(text)), BudgetError);
    auto qp = parse("%@exists\n" + text + "\n%@constraint\n");
    CHECK_THROWS_AS(coherence_bruteforce(qp, {.max_free_atoms = 30, .budget = 1000}), BudgetError);
}

TEST_CASE("minimality checks agree on random programs") {
    std::mt19937_64 rng(19);
    for (int k = 0; k < 500; ++k) {
        auto p = random_program(rng, 8, 8);
        CHECK_NOTHROW(answer_sets_bruteforce(p));
    }
}
