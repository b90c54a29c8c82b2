#include "helpers.hpp"

#include <quantasp/eval.hpp>
#include <quantasp/gc.hpp>
#include <quantasp/generate.hpp>
#include <quantasp/qbf.hpp>

#include <doctest.h>

using namespace quantasp;
using qt::NameSet;

namespace {

const char* kTwoLevel = "%@exists\n{a;b}.\n:- a, not b.\n%@forall\nc :- not a, not b.\nd :- a, b.\n{e}.\n"
                         "%@constraint\n:- e, c.\n:- e, d.\n";

NameSet block_names(const QuantBlock& b, const SymbolTable& t, bool user_only) {
    NameSet out;
    for (auto v : b.vars) {
        if (!user_only || t.kind(v - 1) == AtomKind::User) {
            out.insert(t.name(v - 1));
        }
    }
    return out;
}

bool isomorphic(const QbfCircuit& x, const QbfCircuit& y) {
    return x.gates == y.gates && x.output == y.output && x.prefix == y.prefix && x.num_vars == y.num_vars;
}

} // namespace

TEST_CASE("intermediate programs") {
    auto qp = parse(kTwoLevel);
    CHECK(same_rules(build_intermediate(qp, 1, EncodingMode::Base), qp.level(1).program));
    CHECK(render(build_intermediate(qp, 2, EncodingMode::Base)) ==
          "c :- not a, not b.\nd :- a, b.\n{e}.\n{a;b}.\n");
    CHECK(render(build_intermediate(qp, 3, EncodingMode::Base)) == ":- e, c.\n:- e, d.\n{c;d;e}.\n");
    CHECK_THROWS_AS(build_intermediate(qp, 4, EncodingMode::Base), ProgramError);
    CHECK_THROWS_AS(build_intermediate(qp, 0, EncodingMode::Base), ProgramError);
}

TEST_CASE("intermediate programs without well-founded knowledge") {
    auto qp = parse("%@exists\n{a}.\n%@exists\nb :- a.\n{c}.\n%@constraint\n");
    auto wf = build_intermediate(qp, 2, EncodingMode::WellFounded);
    CHECK(qt::answer_sets(wf) == qt::answer_sets(build_intermediate(qp, 2, EncodingMode::Base)));
}

TEST_CASE("two-level encoding") {
    auto qp  = parse(kTwoLevel);
    auto enc = build_phi(qp);
    auto& c  = enc.circuit;
    auto& t  = *enc.symbols;
    REQUIRE(c.prefix.size() == 4);
    CHECK(c.prefix[0].quantifier == Quantifier::Exists);
    CHECK(c.prefix[1].quantifier == Quantifier::Forall);
    CHECK(c.prefix[2].quantifier == Quantifier::Exists);
    CHECK(c.prefix[3].quantifier == Quantifier::Exists);
    CHECK(block_names(c.prefix[0], t, true) == NameSet{"a", "b"});
    CHECK(block_names(c.prefix[1], t, true) == NameSet{"c", "d", "e"});
    CHECK(block_names(c.prefix[2], t, true).empty());
    CHECK(block_names(c.prefix[3], t, false) == NameSet{"_phi_1", "_phi_2", "_phi_3"});
    CHECK(c.prefix[0].vars.size() == 4);
    CHECK(c.prefix[1].vars.size() == 6);
    CHECK(c.gate_vars.size() == 3);
    CHECK(enc.report.levels[0].clauses == 5);
    CHECK(enc.report.levels[1].clauses == 12);
    CHECK(enc.report.levels[2].clauses == 8);
    CHECK(eval_qbf(c, {64}) == coherence_bruteforce(qp));

    // φ_c = φ1 ∧ (¬φ2 ∨ φ3)
    const auto& out = c.gates[c.output.index];
    const auto& phi_c = c.gates[out.inputs.back().index];
    CHECK(phi_c.kind == GateKind::And);
    CHECK(phi_c.inputs[0] == Signal::var(c.gate_vars[0]));
    const auto& inner = c.gates[phi_c.inputs[1].index];
    CHECK(inner.kind == GateKind::Or);
    CHECK(inner.inputs[0] == Signal::var(c.gate_vars[1], true));
    CHECK(inner.inputs[1] == Signal::var(c.gate_vars[2]));
}

TEST_CASE("single-level encodings") {
    CHECK(eval_qbf(build_phi(parse("%@exists\n{a}.\n%@constraint\n")).circuit));
    CHECK_FALSE(eval_qbf(build_phi(parse("%@exists\np :- not p.\n%@constraint\n")).circuit));
}

TEST_CASE("pruning") {
    auto ex = build_phi_wf(parse("%@exists\na :- a.\np :- not a, not p.\n%@constraint\n"));
    CHECK(ex.report.pruned_at == 1u);
    CHECK(ex.report.constant_result == false);
    CHECK(ex.circuit.prefix.empty());
    CHECK_FALSE(eval_qbf(ex.circuit));

    auto all = build_phi_wf(parse("%@forall\np :- not p.\n%@constraint\n"));
    CHECK(all.report.pruned_at == 1u);
    CHECK(all.report.constant_result == true);
    CHECK(eval_qbf(all.circuit));

    auto later = build_phi_wf(parse("%@exists\n{a}.\n%@forall\np :- not p, a.\n%@constraint\n"));
    if (later.report.pruned_at) {
        CHECK(*later.report.pruned_at == 2);
        CHECK(later.report.levels.size() == 2);
        CHECK_FALSE(later.report.constant_result.has_value());
    }
    CHECK(eval_qbf(later.circuit) == coherence_bruteforce(parse("%@exists\n{a}.\n%@forall\np :- not p, a.\n%@constraint\n")));
}

TEST_CASE("empty well-founded models give the base encoding") {
    auto qp = parse("%@exists\na :- not b.\nb :- not a.\n%@forall\n{c}.\n%@constraint\n:- a, c.\n");
    auto b  = build_phi(qp).circuit;
    auto w  = build_phi_wf(qp).circuit;
    CHECK(isomorphic(b, w));
}

TEST_CASE("trivial levels leave the matrix") {
    auto qp = parse("%@exists\n{x}.\n%@forall\n{y}.\n%@constraint\n:- x, not y.\n");
    CHECK(trivial_levels(qp) == std::vector<std::size_t>{1, 2});
    auto k = build_phi_k(qp);
    CHECK(k.circuit.gate_vars.size() == 1);
    REQUIRE(k.circuit.prefix.size() >= 3);
    CHECK(k.circuit.prefix[0].quantifier == Quantifier::Exists);
    CHECK(k.circuit.prefix[1].quantifier == Quantifier::Forall);
    CHECK(block_names(k.circuit.prefix[0], *k.symbols, true) == NameSet{"x"});
    CHECK(block_names(k.circuit.prefix[1], *k.symbols, true) == NameSet{"y"});
    CHECK(eval_qbf(k.circuit) == coherence_bruteforce(qp));
}

TEST_CASE("no trivial levels gives the base circuit") {
    auto qp = parse(kTwoLevel);
    CHECK(trivial_levels(qp).empty());
    CHECK(isomorphic(build_phi_k(qp).circuit, build_phi(qp).circuit));
}

TEST_CASE("direct CNF encoding") {
    auto qp = parse("%@exists\n{a}.\nb :- a.\n%@exists\n{c}.\n%@constraint\n:- b, not c.\n");
    auto f  = build_phi_k_cnf(qp);
    for (const auto& b : f.qbf.prefix) {
        CHECK(b.quantifier == Quantifier::Exists);
    }
    CHECK(eval_qbf(f.qbf) == coherence_bruteforce(qp));

    auto notrivial = parse(kTwoLevel);
    CHECK_THROWS_AS(build_phi_k_cnf(notrivial), ProgramError);

    auto d  = parse("%@forall\n{a(1);a(2)}.\n:- a(1), a(2).\n%@exists\nb(1).\nb(2).\nc(1) :- b(1).\nc(2) :- b(2).\n"
                    "%@constraint\n");
    auto ch = gc_chain(d);
    for (auto mode : {EncodingMode::Base, EncodingMode::WellFounded}) {
        auto e = build_phi_k_cnf(ch, mode);
        CHECK(eval_qbf(e.qbf) == coherence_bruteforce(d));
        CHECK(e.qbf.prefix.front().quantifier == Quantifier::Forall);
    }
}

TEST_CASE("prefix well-formedness on random programs") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 150; ++k) {
        auto qp = random_quantified_program(rng);
        for (auto enc : {build_phi(qp), build_phi_wf(qp), build_phi_k(qp)}) {
            CHECK_NOTHROW(enc.circuit.validate());
            std::vector<bool> in_prefix(enc.circuit.num_vars + 1, false);
            for (auto v : quantified_vars(enc.circuit.prefix)) {
                in_prefix[v] = true;
            }
            for (const auto& g : enc.circuit.gates) {
                for (const auto& s : g.inputs) {
                    if (!s.gate) {
                        CHECK(in_prefix[s.index]);
                    }
                }
            }
        }
    }
}

TEST_CASE("per-level well-founded information") {
    auto levels = well_founded_levels(parse("%@exists\na :- a.\np :- not a, not p.\n%@constraint\n"));
    REQUIRE(levels.size() == 2);
    CHECK(render(levels[0].model, *levels[0].symbols) == "{~a}");
    CHECK(render(levels[0].residual) == "p :- not p.\n");
}
