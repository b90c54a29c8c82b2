#include "helpers.hpp"

#include <quantasp/features.hpp>

#include <doctest.h>

using namespace quantasp;

TEST_CASE("feature names") {
    const auto& n = FeatureVector::names();
    CHECK(n.size() == 21);
    CHECK(n.front() == "R");
    FeatureVector f;
    CHECK_THROWS(f.set("nope", 1));
}

TEST_CASE("hand-counted program") {
    // desugared: 5 rules on level 1, 4 on level 2, 2 in C
    auto qp = parse("%@exists\n{a;b}.\n:- a, not b.\n%@forall\nc :- not a, not b.\nd :- a, b.\n{e}.\n"
                    "%@constraint\n:- e, c.\n:- e, d.\n");
    auto f = extract_features(qp);
    CHECK(f.value("R") == 11);
    CHECK(f.value("NR") == 8);
    CHECK(f.value("R1") == 6);
    CHECK(f.value("R2") == 2);
    CHECK(f.value("R3") == 3);
    CHECK(f.value("PR") == 1);
    CHECK(f.value("QF") == 1);
    CHECK(f.value("QE") == 1);
    CHECK(f.value("QL") == 2);
    CHECK(f.value("NC") == 3);
    CHECK(f.value("DF") == 0);
    CHECK(f.value("F") == 0);
}

TEST_CASE("extraction leaves the program untouched") {
    auto qp     = parse("%@exists\n{a}.\n%@constraint\n:- a.\n");
    auto before = render(qp);
    extract_features(qp);
    CHECK(render(qp) == before);
}

TEST_CASE("json output") {
    auto f = extract_features(parse("%@exists\na.\n%@constraint\n"));
    auto j = f.to_json();
    CHECK(j.rfind("{\"R\":1,", 0) == 0);
    CHECK(j.find("\"QE\":1,") != std::string::npos);
}

TEST_CASE("predicates") {
    FeatureVector f;
    f.set("QF", 0);
    f.set("A", 250);
    f.set("QL", 2);
    CHECK(evaluate_predicate("QF==0", f));
    CHECK(evaluate_predicate("QL>=2 && A>=200", f));
    CHECK_FALSE(evaluate_predicate("QL > 2 && A>=200", f));
    CHECK(evaluate_predicate("QL > 2 || A != 3", f));
    CHECK(evaluate_predicate("A < 250.5", f));
    CHECK_THROWS(evaluate_predicate("QF ~ 1", f));
    CHECK_THROWS(evaluate_predicate("NOPE == 1", f));
}

TEST_CASE("selection") {
    auto& t = default_selection_table();
    FeatureVector f;
    CHECK(select_backend(f, t) == "depqbf");
    f.set("QF", 1);
    f.set("QL", 2);
    f.set("A", 300);
    CHECK(select_backend(f, t) == "rareqs");
    f.set("A", 10);
    CHECK(select_backend(f, t) == "quabs");

    auto custom = parse_selection_table(R"([{"when":"A>5","use":"x"}])");
    CHECK(select_backend(f, custom) == "x");
    f.set("A", 1);
    CHECK_THROWS(select_backend(f, custom));
    CHECK_THROWS(select_backend(f, {}));
    CHECK_THROWS(parse_selection_table(R"([{"when":"A>5"}])"));
}
