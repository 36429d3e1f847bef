#include "vxcalc/algebroid.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vxcalc;

namespace {

Chart c2h() {
    std::vector<std::vector<Scalar>> gram{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    return build_chart("c2h", 2, gram);
}

}  // namespace

TEST_CASE("truncation operations on the beta-gamma chart", "[algebroid]") {
    Chart c = build_chart("bg1", 1);
    OneTruncated t = extract_truncation(c);
    RingElement x = RingElement::variable("x");
    CHECK(t.anchor(c.tau[0], x) == RingElement(1));
    CHECK(t.one(c.tau[0], c.omega[0]) == RingElement(1));
    CHECK(t.dd(x) == c.omega[0]);
    CHECK(t.opm(x, c.omega[0]) == State::one_mode(Gen::B, 1, -1, x));
    // Double-derivation correction baked into the (1)-product:
    // (x^2 o tau)1 tau = x^2 (tau1 tau) - pi(tau)pi(tau)(x^2) = -2.
    CHECK(t.one(t.opm(x * x, c.tau[0]), c.tau[0]) == RingElement(Scalar(-2)));
}

TEST_CASE("nine axioms hold on built-in charts", "[algebroid]") {
    std::vector<Chart> charts;
    charts.push_back(build_chart("bg1", 1));
    charts.push_back(build_chart("bg2", 2));
    charts.push_back(c2h());
    GluedPair g = build_p1_tcdo();
    charts.push_back(*g.c0);
    charts.push_back(*g.c1);
    for (const auto& c : charts) {
        Report r = check_algebroid_axioms(extract_truncation(c));
        INFO(r.to_text());
        CHECK(r.ok());
    }
}

TEST_CASE("axioms catch corrupted data", "[algebroid]") {
    // The identities hold for any weight-1 states of a genuine chart, so the
    // negative control corrupts an operation: a sign-flipped anchor breaks
    // the v1 df = pi(v)f axiom with a witness.
    struct Broken : OneTruncated {
        RingElement anchor(const State& v, const RingElement& f) const override {
            return RingElement(Scalar(-1)) * OneTruncated::anchor(v, f);
        }
    };
    Chart c = build_chart("bad", 2);
    Broken b;
    b.chart = &c;
    Report r = check_algebroid_axioms(b);
    CHECK_FALSE(r.ok());
    bool witnessed = false;
    for (const auto& ch : r.checks)
        if (!ch.pass && !ch.witness.empty()) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("associated Lie algebroid of abelian charts", "[algebroid]") {
    Chart c = c2h();
    OneTruncated t = extract_truncation(c);
    LieAlgebroid l = quotient_lie_algebroid(t);
    for (const auto& row : l.bracket)
        for (const auto& cl : row) CHECK(cl.is_zero());
    // anchor(tau_i) = d/dx_i, anchor(h) = 0.
    CHECK(l.anchor[0][0] == RingElement(1));
    CHECK(l.anchor[0][1] == RingElement(0));
    CHECK(l.anchor[1][1] == RingElement(1));
    CHECK(l.anchor[2][0] == RingElement(0));
    CHECK(l.anchor[3][1] == RingElement(0));
    // The pairing recovered from (1)-products is the gram matrix.
    CHECK(l.h_pairing == c.table().gram);
    // O-linearity of the anchor on a sample.
    RingElement f = RingElement::variable("x2");
    CHECK(t.anchor(t.opm(f, c.tau[0]), RingElement::variable("x1")) == f);
}

TEST_CASE("nonabelian bracket lands in the one-form class", "[algebroid]") {
    Chart c = build_chart("cdo3", 3, {}, KForm::dx_wedge({1, 2, 3}));
    LieAlgebroid l = quotient_lie_algebroid(extract_truncation(c));
    // [tau_i, tau_j] = iota_i iota_j alpha is a one-form: zero class.
    for (const auto& row : l.bracket)
        for (const auto& cl : row) CHECK(cl.is_zero());
}

TEST_CASE("lambda2 twist shows up in the quotient bracket", "[algebroid]") {
    std::vector<std::vector<Scalar>> gram{{Scalar(0)}};
    Chart c = build_chart("tcdo2", 2, gram, KForm(3), {KForm::dx_wedge({1, 2})});
    LieAlgebroid l = quotient_lie_algebroid(extract_truncation(c));
    CHECK(l.bracket[0][1].h_coeff[0] == RingElement(1));
    CHECK(l.bracket[1][0].h_coeff[0] == RingElement(Scalar(-1)));
    CHECK(l.bracket[0][1].tau_coeff[0].is_zero());
}

TEST_CASE("pairing kernel", "[algebroid]") {
    auto center_of = [](std::vector<std::vector<Scalar>> gram, int n_pairs) {
        Chart c = build_chart("g", n_pairs, std::move(gram));
        return pairing_and_center(quotient_lie_algebroid(extract_truncation(c)));
    };
    CHECK(center_of({{Scalar(0)}}, 1).z_basis ==
          std::vector<std::vector<Scalar>>{{Scalar(1)}});
    CHECK(center_of({{Scalar(1)}}, 1).z_basis.empty());
    auto z = center_of({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}}, 1).z_basis;
    REQUIRE(z.size() == 1);
    CHECK(z[0] == std::vector<Scalar>{Scalar(0), Scalar(1)});
}

TEST_CASE("central lift strips one-form noise and is unique", "[algebroid]") {
    GluedPair g = build_p1_tcdo();
    OneTruncated t = extract_truncation(*g.c0);
    State lam = g.c0->hgen[0];
    CHECK(central_lift(t, lam) == lam);
    // Corrupted lift: lambda* + dx reduces back to lambda*.
    CHECK(central_lift(t, lam + g.c0->omega[0]) == lam);
    // Invariance under arbitrary one-form perturbations.
    State pert = t.opm(RingElement::variable("x") * RingElement::variable("x"),
                       g.c0->omega[0]);
    CHECK(central_lift(t, lam + pert) == central_lift(t, lam));

    // A ^2-chart with gram diag(1,0): h2 is central, h1 is not.
    Chart c = c2h();
    OneTruncated t2 = extract_truncation(c);
    State lifted = central_lift(t2, c.hgen[1] + t2.opm(RingElement::variable("x1"),
                                                       c.omega[0]));
    for (const auto& tau : c.tau) {
        CHECK(t2.one(tau, lifted).is_zero());
        CHECK(t2.zero(tau, lifted).is_zero());
    }
    CHECK(central_lift(t2, c.hgen[1]) == c.hgen[1]);
    CHECK_THROWS_AS(central_lift(t2, c.hgen[0]), std::invalid_argument);
}
