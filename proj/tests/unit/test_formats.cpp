#include "helpers.hpp"

#include <quantasp/eval.hpp>
#include <quantasp/formats.hpp>
#include <quantasp/generate.hpp>

#include <doctest.h>

using namespace quantasp;

namespace {

const char* kQcir = "#QCIR-G14\nexists(1)\nforall(2)\noutput(5)\n3 = or(1,2)\n4 = or(-1,-2)\n5 = and(3,4)\n";

} // namespace

TEST_CASE("qcir example") {
    auto c = parse_qcir(kQcir);
    CHECK(c.num_vars == 2);
    CHECK(c.gates.size() == 3);
    CHECK(emit_qcir(c) == kQcir);
    // ∃x ∀y (x ∨ y) ∧ (¬x ∨ ¬y) is false
    CHECK_FALSE(eval_qbf(c));
    CHECK_FALSE(eval_qbf_naive(c));
    auto swapped = parse_qcir("#QCIR-G14\nforall(2)\nexists(1)\noutput(5)\n3 = or(1,2)\n4 = or(-1,-2)\n5 = and(3,4)\n");
    CHECK(eval_qbf(swapped));
}

TEST_CASE("qcir constants") {
    QbfCircuit c;
    c.output = c.constant(true);
    CHECK(emit_qcir(c) == "#QCIR-G14\noutput(1)\n1 = and()\n");
    CHECK(eval_qbf(c));
    QbfCircuit f;
    f.output = !f.constant(true);
    CHECK_FALSE(eval_qbf(f));
    CHECK(emit_qcir(parse_qcir(emit_qcir(f))) == emit_qcir(f));
}

TEST_CASE("qcir errors") {
    CHECK_THROWS_AS(parse_qcir("#QCIR-G14\noutput(4)\n4 = and(5)\n5 = or(1)\n"), FormatError);
    CHECK_THROWS_AS(parse_qcir("#QCIR-G14\nexists(1)\n3 = and(1)\n"), FormatError);
    CHECK_THROWS_AS(parse_qcir("#QCIR-G14\nexists(1)\noutput(3)\n3 = xor(1,2)\n"), FormatError);
    CHECK_THROWS_AS(parse_qcir("#QCIR-G14\nexists(1)\nexists(1)\noutput(2)\n2 = and(1)\n"), FormatError);
}

TEST_CASE("qdimacs example") {
    const char* text = "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 -2 0\n";
    auto f = parse_qdimacs(text);
    CHECK(f.num_vars == 2);
    CHECK(f.clauses.size() == 2);
    CHECK(emit_qdimacs(f) == text);
    CHECK_FALSE(eval_qbf(f));
    CHECK(emit_qcir(to_circuit(f)) == "#QCIR-G14\nexists(1)\nforall(2)\noutput(5)\n3 = or(1,2)\n4 = or(-1,-2)\n"
                                      "5 = and(3,4)\n");
}

TEST_CASE("qdimacs errors") {
    CHECK_THROWS_AS(parse_qdimacs("e 1 0\n1 0\n"), FormatError);
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 2\n1 0\n"), FormatError);
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\n2 0\n"), FormatError);
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\n1 0\ne 1 0\n"), FormatError);
}

TEST_CASE("prefix normalization") {
    PrenexCnf f;
    f.num_vars = 3;
    f.prefix   = {{Quantifier::Exists, {1}}, {Quantifier::Exists, {2}}, {Quantifier::Forall, {}}, {Quantifier::Forall, {3}}};
    f.clauses  = {{1, 2, 3}};
    CHECK(emit_qdimacs(f) == "p cnf 3 1\ne 1 2 0\na 3 0\n1 2 3 0\n");
}

TEST_CASE("tseytin of a single and") {
    QbfCircuit c;
    c.num_vars = 2;
    c.prefix   = {{Quantifier::Exists, {1, 2}}};
    auto g     = c.add_and({Signal::var(1), Signal::var(2)});
    // used in both polarities through the output and a second gate
    c.output = c.add_or({g, !g});
    auto f   = prenex_cnf(c);
    CHECK(f.num_vars == 4);

    QbfCircuit one;
    one.num_vars = 2;
    one.prefix   = {{Quantifier::Exists, {1, 2}}};
    one.output   = one.add_and({Signal::var(1), !Signal::var(2)});
    auto t       = prenex_cnf(one);
    CHECK(t.num_vars == 3);
    CHECK(t.prefix.back().vars == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(eval_qbf(t));
}

TEST_CASE("format names") {
    CHECK(parse_format("qcir") == QbfFormat::Qcir);
    CHECK(parse_format("qdimacs") == QbfFormat::Qdimacs);
    CHECK(to_string(QbfFormat::Qcir) == "qcir");
    CHECK_THROWS_AS(parse_format("aag"), FormatError);
}

TEST_CASE("evaluation budget") {
    QbfCircuit c;
    c.num_vars = 30;
    std::vector<Signal> in;
    for (std::uint32_t v = 1; v <= 30; ++v) {
        in.push_back(Signal::var(v));
        c.prefix.push_back({v % 2 != 0 ? Quantifier::Exists : Quantifier::Forall, {v}});
    }
    c.output = c.add_or(in);
    CHECK_THROWS_AS(eval_qbf(c, {.max_vars = 24}), BudgetError);
}

TEST_CASE("random circuits agree across routes") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        auto c = random_circuit(rng, 12);
        CHECK_NOTHROW(c.validate());
        auto truth = eval_qbf_naive(c);
        CHECK(eval_qbf(c) == truth);
        auto cnf = prenex_cnf(c);
        CHECK(eval_qbf(cnf) == truth);
        CHECK(parse_qcir(emit_qcir(c)) == c);
        CHECK(parse_qdimacs(emit_qdimacs(cnf)).clauses == cnf.clauses);
        CHECK(emit_qdimacs(parse_qdimacs(emit_qdimacs(cnf))) == emit_qdimacs(cnf));
    }
}
