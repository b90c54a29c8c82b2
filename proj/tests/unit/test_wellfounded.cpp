#include "helpers.hpp"

#include <quantasp/generate.hpp>
#include <quantasp/wellfounded.hpp>

#include <doctest.h>

using namespace quantasp;
using qt::NameSet;

namespace {

PartialInterpretation assign(const Program& p, const NameSet& t, const NameSet& f = {}) {
    PartialInterpretation i;
    for (const auto& n : t) {
        i.set(*p.symbols().find(n), Truth::True);
    }
    for (const auto& n : f) {
        i.set(*p.symbols().find(n), Truth::False);
    }
    return i;
}

} // namespace

TEST_CASE("immediate consequence") {
    auto p = qt::prog("a. b :- a.");
    CHECK(qt::names(tp_step(p, {}), p.symbols()) == NameSet{"a"});
    CHECK(qt::names(tp_step(p, assign(p, {"a"})), p.symbols()) == NameSet{"a", "b"});
    auto q = qt::prog("a :- b. b :- not c.");
    CHECK(tp_step(q, {}).empty());
}

TEST_CASE("greatest unfounded set") {
    auto p = qt::prog("a :- a.");
    CHECK(qt::names(greatest_unfounded(p, {}), p.symbols()) == NameSet{"a"});
    CHECK(greatest_unfounded(qt::prog("p :- not p."), {}).empty());
    CHECK(greatest_unfounded(qt::prog("a."), {}).empty());
}

TEST_CASE("well-founded model examples") {
    auto p  = qt::prog("a :- a. p :- not a, not p.");
    auto wf = well_founded_model(p);
    CHECK(render(wf.model, p.symbols()) == "{~a}");
    CHECK(render(wf.residual) == "p :- not p.\n");

    auto f = qt::prog("a.");
    auto w = well_founded_model(f);
    CHECK(render(w.model, f.symbols()) == "{a}");
    CHECK(render(w.residual) == "a.\n");

    auto e  = qt::prog("a :- not b. b :- not a.");
    auto we = well_founded_model(e);
    CHECK(render(we.model, e.symbols()) == "{}");
    CHECK(same_rules(we.residual, e));
    CHECK_FALSE(we.trivially_incoherent);
}

TEST_CASE("well-founded model rejects non-normal programs") {
    CHECK_THROWS_AS(well_founded_model(qt::prog("{a}.")), ProgramError);
}

TEST_CASE("residual drops decided atoms") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 300; ++k) {
        auto p  = desugar(random_program(rng, 6, 7));
        auto wf = well_founded_model(p);
        for (const auto& r : wf.residual.rules()) {
            for (const auto& l : r.body()) {
                CHECK_FALSE(wf.model.decided(l.atom));
            }
        }
    }
}

TEST_CASE("W is contained in every answer set") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 300; ++k) {
        auto p  = desugar(random_program(rng, 6, 7));
        auto wf = well_founded_model(p);
        for (const auto& m : answer_sets_bruteforce(p).models) {
            for (auto a : wf.model.true_atoms()) {
                CHECK(m.count(a) == 1);
            }
            for (auto a : wf.model.false_atoms()) {
                CHECK(m.count(a) == 0);
            }
        }
    }
}

TEST_CASE("stratified programs have total well-founded models") {
    std::mt19937_64 rng(4);
    int             seen = 0;
    for (int k = 0; k < 400; ++k) {
        auto p = desugar(random_program(rng, 6, 6, {.p_choice = 0, .p_constraint = 0}));
        if (!is_stratified(p)) {
            continue;
        }
        ++seen;
        auto wf = well_founded_model(p);
        CHECK(wf.model.is_total());
    }
    CHECK(seen > 50);
}

TEST_CASE("choice interfaces") {
    auto qp    = parse("%@exists\n{a;b;c}.\n%@exists\nd :- a, b, c.\n%@constraint\n");
    auto lower = qp.level(1).program;
    auto upper = qp.level(2).program;
    auto a     = *qp.symbols().find("a");
    auto b     = *qp.symbols().find("b");
    PartialInterpretation w;
    w.set(a, Truth::True);
    w.set(b, Truth::False);
    CHECK(render(wf_choice_interface(lower, upper, w)) == "{c}.\na.\n");
    CHECK(render(wf_choice_interface(lower, upper, {})) == render(choice_interface(lower, upper)));
    CHECK(render(choice_interface(lower, upper)) == "{a;b;c}.\n");

    auto disjoint = parse("%@exists\na.\n%@exists\nb.\n%@constraint\n");
    CHECK(choice_interface(disjoint.level(1).program, disjoint.level(2).program).empty());
}

TEST_CASE("false interface atoms redefined above are blocked") {
    auto qp = parse("%@exists\n{a}.\n%@exists\na :- b.\n{b}.\n%@constraint\n");
    auto a  = *qp.symbols().find("a");
    PartialInterpretation w;
    w.set(a, Truth::False);
    CHECK(render(wf_choice_interface(qp.level(1).program, qp.level(2).program, w)) == ":- a.\n");
}
