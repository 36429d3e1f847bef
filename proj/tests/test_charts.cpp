#include "vxcalc/charts.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vxcalc;

namespace {

KForm dx123() { return KForm::dx_wedge({1, 2, 3}); }

std::vector<std::string> vars3{"x1", "x2", "x3"};

}  // namespace

TEST_CASE("exterior derivative and contraction", "[forms]") {
    // d(x2 dx1) = -dx1^dx2, iota_1 picks signed components.
    KForm f = KForm::dx_wedge({1}, RingElement::variable("x2"));
    KForm df = f.d(vars3);
    KForm expect = KForm(2) + Scalar(-1) * KForm::dx_wedge({1, 2});
    CHECK(df == expect);
    CHECK(df.contract(1) == Scalar(-1) * KForm::dx_wedge({2}));
    CHECK(df.contract(2) == KForm::dx_wedge({1}));
    CHECK(dx123().d(vars3).is_zero());
    CHECK(dx123().contract(1) == KForm::dx_wedge({2, 3}));
    CHECK(dx123().contract(2) == Scalar(-1) * KForm::dx_wedge({1, 3}));
}

TEST_CASE("radial homotopy yields potentials of closed forms", "[forms]") {
    CHECK(KForm::dx_wedge({1}).homotopy(vars3) ==
          KForm::dx_wedge({}, RingElement::variable("x1")));
    KForm a = dx123();
    CHECK(a.homotopy(vars3).d(vars3) == a);
    KForm b = KForm::dx_wedge({1, 2, 3}, RingElement::variable("x1"));
    REQUIRE(b.d(vars3).is_zero());
    CHECK(b.homotopy(vars3).d(vars3) == b);
    KForm c = KForm::dx_wedge({1, 2}, RingElement::variable("x3", 2));
    KForm dc = c.d(vars3);
    CHECK(dc.homotopy(vars3).d(vars3) == dc);
}

TEST_CASE("chart builder validates twist data", "[charts]") {
    // alpha = x1 dx1^dx2^dx3 is closed and accepted; a non-closed 3-form is not.
    KForm ok = KForm::dx_wedge({1, 2, 3}, RingElement::variable("x1"));
    CHECK_NOTHROW(build_chart("c", 3, {}, ok));
    KForm bad(3);
    bad.add({1, 2, 3}, RingElement::variable("x4"));
    CHECK_THROWS(build_chart("c", 4, {}, bad));
}

TEST_CASE("structure relations of the plain beta-gamma chart", "[charts]") {
    for (int n = 1; n <= 2; ++n) {
        Chart c = build_chart("bg" + std::to_string(n), n);
        Report r = commutator_report(c, 2);
        INFO(r.to_text());
        CHECK(r.ok());
    }
}

TEST_CASE("structure relations with Heisenberg sector", "[charts]") {
    std::vector<std::vector<Scalar>> gram{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    Chart c = build_chart("c2h", 2, gram);
    Report r = commutator_report(c, 2);
    INFO(r.to_text());
    CHECK(r.ok());
}

TEST_CASE("twisted chart recovers its 3-form", "[charts]") {
    Chart c = build_chart("cdo3", 3, {}, dx123());
    // (tau_1)_(0) tau_2 = iota_1 iota_2 (dx1^dx2^dx3) = dx3.
    State p = c.ops->nth_product(c.tau[0], 0, c.tau[1]);
    CHECK(p == oneform_state(c.table(), c.alpha.contract(1).contract(2)));
    CHECK(p == State::one_mode(Gen::B, 3, -1));
    CHECK(c.ops->nth_product(c.tau[0], 1, c.tau[1]).is_zero());
    Report r = commutator_report(c, 2);
    INFO(r.to_text());
    CHECK(r.ok());

    Chart cx = build_chart("cdo3x", 3, {}, KForm::dx_wedge({1, 2, 3}, RingElement::variable("x1")));
    State px = cx.ops->nth_product(cx.tau[0], 0, cx.tau[1]);
    CHECK(px == State::one_mode(Gen::B, 3, -1, RingElement::variable("x1")));
    Report rx = commutator_report(cx, 2);
    INFO(rx.to_text());
    CHECK(rx.ok());
}

TEST_CASE("lambda2 sector appears in the tau-tau products", "[charts]") {
    std::vector<std::vector<Scalar>> gram{{Scalar(0)}};
    KForm l2 = KForm::dx_wedge({1, 2});
    Chart c = build_chart("tcdo2", 2, gram, KForm(3), {l2});
    REQUIRE(c.is_lambda_star == std::vector<bool>{true});
    State p = c.ops->nth_product(c.tau[0], 0, c.tau[1]);
    CHECK(p == State::one_mode(Gen::H, 1, -1));  // iota_1 iota_2 (dx1^dx2) = 1
    Report r = commutator_report(c, 2);
    INFO(r.to_text());
    CHECK(r.ok());
}

TEST_CASE("projective line gluing, untwisted", "[gluing]") {
    GluedPair g = build_p1_cdo();
    INFO(g.variant_note);
    // x -> 1/y.
    CHECK(apply_transition(g.t01, State::vacuum(RingElement::variable("x"))) ==
          State::vacuum(RingElement::variable("y", -1)));
    CHECK(apply_transition(g.t01, State::vacuum()) == State::vacuum());
    // Morphisms commute with translation.
    State x = State::vacuum(RingElement::variable("x"));
    CHECK(apply_transition(g.t01, g.c0->ops->translate(x)) ==
          g.c1->ops->translate(apply_transition(g.t01, x)));
    // (d_x)_(0) x = 1 is preserved.
    State tau = State::one_mode(Gen::A, 1, -1);
    State im_tau = apply_transition(g.t01, tau);
    State im_x = apply_transition(g.t01, x);
    CHECK(g.c1->ops->nth_product(im_tau, 0, im_x) == State::vacuum());
    CHECK(g.c1->ops->nth_product(im_tau, 1, im_tau).is_zero());

    CHECK(verify_homomorphism(g.t01, 2, 2).ok());
    CHECK(verify_homomorphism(g.t10, 2, 2).ok());
    CHECK(verify_roundtrip(g.t01, g.t10, 2).ok());

    // Perturbing the correction sign breaks the homomorphism with a witness.
    TransitionMap bad = g.t01;
    bad.a_images[0] = bad.a_images[0] + Scalar(4) * g.c1->ops->translate(
                                            State::vacuum(RingElement::variable("y", -1)));
    Report rb = verify_homomorphism(bad, 2, 2);
    CHECK_FALSE(rb.ok());
    bool has_witness = false;
    for (const auto& ch : rb.checks)
        if (!ch.pass && !ch.witness.empty()) has_witness = true;
    CHECK(has_witness);
}

TEST_CASE("projective line gluing, twisted", "[gluing]") {
    GluedPair g = build_p1_tcdo();
    INFO(g.variant_note);
    CHECK(apply_transition(g.t01, State::one_mode(Gen::H, 1, -1)) ==
          State::one_mode(Gen::H, 1, -1));
    CHECK(verify_homomorphism(g.t01, 2, 2).ok());
    CHECK(verify_homomorphism(g.t10, 2, 2).ok());
    CHECK(verify_roundtrip(g.t01, g.t10, 2).ok());
    CHECK(verify_roundtrip(g.t10, g.t01, 2).ok());
    // d(lambda1) = d(dx/x) = 0 on the overlap.
    CHECK(g.t01.lambda1.d(g.c0->table().vars).is_zero());

    // Omitting the lambda* term breaks the gluing.
    TransitionMap bad = g.t01;
    State no_h;
    for (const auto& [m, c] : g.t01.a_images[0].terms()) {
        bool has_h = false;
        for (const auto& md : m.modes) has_h = has_h || md.kind == Gen::H;
        if (!has_h) no_h.add(m, c);
    }
    REQUIRE(no_h != g.t01.a_images[0]);
    bad.a_images[0] = no_h;
    // lambda* is central, so the one-chart homomorphism check alone cannot
    // see the dropped term; the cocycle against the stored inverse does.
    Report rb = verify_roundtrip(bad, g.t10, 2);
    CHECK_FALSE(rb.ok());
}

TEST_CASE("chart-domain error outside the overlap ring", "[gluing]") {
    GluedPair g = build_p1_cdo();
    TransitionMap strict = g.t01;
    strict.overlap_src.vars["x"] = false;  // forbid Laurent coefficients
    State s = State::vacuum(RingElement::variable("x", -1));
    CHECK_THROWS_AS(apply_transition(strict, s), std::domain_error);
    // And substitution out of a Laurent source into a polynomial target.
    TransitionMap poly = g.t01;
    poly.overlap_dst.vars["y"] = false;
    CHECK_THROWS(apply_transition(poly, State::vacuum(RingElement::variable("x"))));
}
