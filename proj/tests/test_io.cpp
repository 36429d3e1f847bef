#include "vxcalc/json_io.hpp"
#include "vxcalc/suites.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vxcalc;

TEST_CASE("polynomial and form serialization roundtrips", "[io]") {
    RingElement f = RingElement::variable("x1", 2) * RingElement(Scalar(3) / Scalar(2)) +
                    RingElement::variable("x2", -1) + RingElement(Scalar(-5));
    CHECK(ring_from_json(ring_to_json(f)) == f);

    KForm alpha = KForm::dx_wedge({1, 2, 3}, RingElement::variable("x1")) +
                  KForm::dx_wedge({1, 2, 4}, RingElement(7));
    KForm back = form_from_json(form_to_json(alpha));
    CHECK(back.comps() == alpha.comps());
}

TEST_CASE("state serialization roundtrips", "[io]") {
    State s = State::one_mode(Gen::A, 1, -2, RingElement::variable("x", 3)) +
              State::one_mode(Gen::H, 2, -1) +
              Scalar(-2) * State::one_mode(Gen::B, 1, -1);
    CHECK(state_from_json(state_to_json(s)) == s);
}

TEST_CASE("chart documents roundtrip and still verify", "[io]") {
    GluedPair g = build_p1_tcdo();
    ChartDocument doc;
    doc.charts = {g.c0, g.c1};
    doc.transitions = {g.t01, g.t10};
    nlohmann::ordered_json j = chart_document_to_json(doc);
    ChartDocument back = chart_document_from_json(j);

    REQUIRE(back.charts.size() == 2);
    CHECK(back.charts[0]->name == g.c0->name);
    CHECK(back.charts[0]->table().H == 1);
    REQUIRE(back.transitions.size() == 2);

    Report fwd = verify_homomorphism(back.transitions[0], 2, 2);
    INFO(fwd.to_text());
    CHECK(fwd.ok());
    Report rt = verify_roundtrip(back.transitions[0], back.transitions[1], 2, 1);
    CHECK(rt.ok());
}

TEST_CASE("characters and presentations parse from JSON", "[io]") {
    CentralCharacter cc;
    cc.theta = {Scalar(0), Scalar(3)};
    cc.chi[0] = {Scalar(3)};
    cc.chi[-1] = {Scalar(1) / Scalar(2)};
    CentralCharacter back = character_from_json(character_to_json(cc));
    CHECK(back.theta == cc.theta);
    CHECK(back.chi == cc.chi);

    auto pj = nlohmann::json::parse(R"({
        "rank": 2,
        "connection": [[[ [], [{"coeff":"1","exps":{"x":1}}] ],
                        [ [], [] ]]]
    })");
    FreePresentation f = presentation_from_json(pj);
    CHECK(f.rank == 2);
    REQUIRE(f.conn.size() == 1);
    CHECK(f.conn[0][0][1] == RingElement::variable("x"));
    CHECK(f.conn[0][1][1].is_zero());
}

TEST_CASE("rational string parsing", "[io]") {
    CHECK(scalar_from_string("3/4") == Scalar(3) / Scalar(4));
    CHECK(scalar_from_string("-7") == Scalar(-7));
    CHECK_THROWS(scalar_from_string("1/0"));
}
