#include "helpers.hpp"

#include <quantasp/generate.hpp>

#include <doctest.h>

using namespace quantasp;
using qt::NameSet;

TEST_CASE("desugar choice and constraint") {
    auto p = qt::prog("{a}.");
    CHECK(render(desugar(p)) == "a :- not _na_a.\n_na_a :- not a.\n");

    auto c = qt::prog(":- a, b.");
    CHECK(render(desugar(c)) == "_t_0 :- a, b, not _t_0.\n");

    Program empty;
    CHECK(desugar(empty).empty());
}

TEST_CASE("desugar keeps choice bodies") {
    auto p = qt::prog("{a; b} :- c.");
    CHECK(render(desugar(p)) == "a :- not _na_a, c.\n_na_a :- not a.\nb :- not _na_b, c.\n_na_b :- not b.\n");
}

TEST_CASE("desugar is idempotent") {
    auto p = desugar(qt::prog("{a}. :- a, not b. b :- a."));
    CHECK(same_rules(desugar(p), p));
}

TEST_CASE("herbrand base") {
    auto p = qt::prog("a :- not b.");
    CHECK(qt::names(herbrand_base(p), p.symbols()) == NameSet{"a", "b"});
    CHECK(herbrand_base(Program{}).empty());
    auto q = qt::prog("a. b :- a, c.");
    CHECK(qt::names(herbrand_base(q), q.symbols()) == NameSet{"a", "b", "c"});
}

TEST_CASE("stratification") {
    CHECK(is_stratified(qt::prog("a :- b. b :- a.")));
    CHECK_FALSE(is_stratified(qt::prog("p :- not p.")));
    CHECK(is_stratified(Program{}));
    CHECK(is_stratified(qt::prog("a :- not b. c :- a.")));
    CHECK_FALSE(is_stratified(qt::prog("a :- not b. b :- not a.")));
}

TEST_CASE("fix") {
    auto p    = qt::prog("a :- not b.");
    auto a    = *p.symbols().find("a");
    auto b    = *p.symbols().find("b");
    auto base = herbrand_base(p);
    CHECK(render(fix(p, PartialInterpretation::total(base, {a}))) == "a.\n:- b.\n");
    CHECK(fix(Program{}, PartialInterpretation{}).empty());

    auto single = qt::prog("a :- a.");
    CHECK(render(fix(single, PartialInterpretation::total(herbrand_base(single), {}))) == ":- a.\n");

    PartialInterpretation partial(base);
    partial.set(a, Truth::True);
    CHECK_THROWS_AS(fix(p, partial), ProgramError);
    (void)b;
}

TEST_CASE("fix forces agreement") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        auto p    = random_program(rng, 4, 5);
        auto base = herbrand_base(p);
        for (const auto& m : answer_sets_bruteforce(p).models) {
            auto q = random_program(rng, 4, 5).rebound(p.symbols_ptr());
            q.append(fix(p, PartialInterpretation::total(base, m)));
            for (const auto& mq : answer_sets_bruteforce(q).models) {
                for (auto x : base) {
                    CHECK((mq.count(x) != 0) == (m.count(x) != 0));
                }
            }
        }
    }
}

TEST_CASE("interface atoms") {
    auto table = std::make_shared<SymbolTable>();
    auto p     = parse_program("a :- b.").rebound(table);
    (void)p;
    auto doc = parse("%@exists\na :- b.\n%@exists\nb :- c.\n%@constraint\n");
    auto i   = interface_atoms(doc.level(1).program, doc.level(2).program);
    CHECK(qt::names(i, doc.symbols()) == NameSet{"b"});
    CHECK(interface_atoms(doc.level(1).program, doc.level(1).program) == herbrand_base(doc.level(1).program));
    auto d = parse("%@exists\na.\n%@exists\nb.\n%@constraint\n");
    CHECK(interface_atoms(d.level(1).program, d.level(2).program).empty());
    CHECK(interface_atoms(doc.level(2).program, doc.level(1).program) == i);
}

TEST_CASE("prefix union") {
    auto qp = parse("%@exists\na.\n%@forall\nb :- a.\n%@constraint\n");
    CHECK(same_rules(prefix_union(qp, 1), qp.level(1).program));
    auto u = prefix_union(qp, 2);
    CHECK(u.size() == 2);
    CHECK(render(u) == "a.\nb :- a.\n");
    CHECK_THROWS(prefix_union(qp, 3));
}

TEST_CASE("desugar preserves answer sets modulo fresh atoms") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 200; ++k) {
        auto p = random_program(rng, 6, 6);
        CHECK(qt::answer_sets(desugar(p)) == qt::answer_sets(p));
    }
}

TEST_CASE("literal complement") {
    Literal l{3, true};
    CHECK(l.complement().complement() == l);
    CHECK_FALSE(l.complement().positive);
}

TEST_CASE("rule construction deduplicates") {
    auto r = Rule::normal(0, {pos(1), pos(1), neg(2)});
    CHECK(r.body().size() == 2);
    auto c = Rule::choice({1, 1, 2});
    CHECK(c.head().size() == 2);
}

TEST_CASE("constraint program must be stratified") {
    CHECK_THROWS_AS(parse("%@exists\na.\n%@constraint\np :- not p.\n"), ParseError);
}

TEST_CASE("symbol table fresh names") {
    SymbolTable t;
    auto        a  = t.intern("a");
    auto        na = t.fresh_choice_complement(a);
    CHECK(t.name(na) == "_na_a");
    CHECK(t.kind(na) == AtomKind::ChoiceComplement);
    auto u1 = t.fresh_unsat(1);
    auto u2 = t.fresh_unsat(1);
    CHECK(t.name(u1) == "_u_1");
    CHECK(u1 != u2);
    CHECK(t.find("a") == a);
    CHECK_FALSE(t.find("zz").has_value());
}
