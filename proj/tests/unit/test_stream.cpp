#include "helpers.hpp"

#include <quantasp/generate.hpp>
#include <quantasp/pipeline.hpp>

#include <doctest.h>

#include <sstream>

using namespace quantasp;

namespace {

std::string streamed(const QuantifiedProgram& qp, const EncodeOptions& o, QbfFormat f) {
    std::ostringstream out;
    compile_to_stream(qp, o, f, out);
    return out.str();
}

} // namespace

TEST_CASE("streaming matches the in-memory encoders") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 60; ++k) {
        auto qp = random_quantified_program(rng);
        for (auto mode : {EncodingMode::Base, EncodingMode::WellFounded}) {
            EncodeOptions o{.mode = mode};
            auto          enc = build_circuit(qp, o);
            CHECK(streamed(qp, o, QbfFormat::Qcir) == emit_qcir(enc.circuit));
            CHECK(streamed(qp, o, QbfFormat::Qdimacs) == emit_qdimacs(prenex_cnf(enc.circuit)));
        }
    }
}

TEST_CASE("direct CNF streaming") {
    std::mt19937_64 rng(7);
    int             done = 0;
    for (int k = 0; k < 60; ++k) {
        auto qp = random_gc_program(rng);
        auto ch = try_gc_chain(qp);
        if (!ch) {
            continue;
        }
        ++done;
        std::ostringstream out;
        compile_cnf_to_stream(*ch, EncodingMode::WellFounded, QbfFormat::Qdimacs, out);
        CHECK(out.str() == emit_qdimacs(build_phi_k_cnf(*ch, EncodingMode::WellFounded).qbf));
    }
    CHECK(done > 0);
}

TEST_CASE("pipeline choices") {
    CHECK(parse_encoding("wf+gc") == EncodingChoice::WfGc);
    CHECK(to_string(EncodingChoice::Base) == "base");
    CHECK_THROWS(parse_encoding("k"));

    auto c = parse("%@exists\n{x}.\n%@forall\np :- not q, x.\nq :- not p.\n%@constraint\n:- p.\n");
    auto p = prepare(c, {.encoding = EncodingChoice::WfGc});
    CHECK_FALSE(p.used_gc);
    CHECK(p.warnings.size() == 1);
    CHECK(solve_internal(p).result == SolveResult::Sat);

    auto d = parse("%@forall\n{a(1);a(2)}.\n:- a(1), a(2).\n%@exists\nb(1).\n%@constraint\n");
    auto g = prepare(d, {.encoding = EncodingChoice::WfGc});
    CHECK(g.used_gc);
    CHECK(g.cnf.has_value());
    CHECK(solve_internal(g).result == SolveResult::Sat);
    auto n = prepare(d, {.encoding = EncodingChoice::WfGc, .no_gc = true});
    CHECK_FALSE(n.used_gc);
    CHECK(n.warnings.empty());
}

TEST_CASE("internal solving over budget is unknown") {
    std::string text = "%@exists\n{";
    for (int k = 0; k < 30; ++k) {
        text += (k != 0 ? ";" : "") + std::string("x") + std::to_string(k);
    }
    text += "}.\n%@forall\n{y}.\n%@constraint\n:- y, x0.\n";
    auto p = prepare(parse(text), {.encoding = EncodingChoice::Base});
    CHECK(solve_internal(p, {.max_vars = 8}).result == SolveResult::Unknown);
}
