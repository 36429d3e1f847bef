#include "vxcalc/vertex.hpp"
#include "vxcalc/random.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vxcalc;

namespace {

FockOps beta_gamma(int n) { return FockOps(GeneratorTable::make(n, 0)); }

FockOps mixed_chart() {
    // C^2 pairs plus two Heisenberg generators with gram diag(1, 0).
    std::vector<std::vector<Scalar>> gram{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    return FockOps(GeneratorTable::make(2, 2, gram));
}

}  // namespace

TEST_CASE("vacuum is the nth-product identity", "[vertex]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(11);
    RandomStates gen(ops.table(), rng);
    for (int t = 0; t < 10; ++t) {
        State w = gen.state(3, 2, 3);
        for (long n = -3; n <= 3; ++n) {
            State p = ops.nth_product(State::vacuum(), n, w);
            if (n == -1)
                CHECK(p == w);
            else
                CHECK(p.is_zero());
        }
    }
}

TEST_CASE("zeroth product of the vector-field state differentiates", "[vertex]") {
    FockOps ops = beta_gamma(1);
    State tau = State::one_mode(Gen::A, 1, -1);
    State x = State::vacuum(RingElement::variable("x"));
    CHECK(ops.nth_product(tau, 0, x) == State::vacuum());
    CHECK(ops.nth_product(tau, 0, x.mul_coeff(RingElement::variable("x"))) ==
          State::vacuum(Scalar(2) * RingElement::variable("x")));
}

TEST_CASE("abelian frame: tau products vanish", "[vertex]") {
    FockOps ops = beta_gamma(2);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            State ti = State::one_mode(Gen::A, i, -1);
            State tj = State::one_mode(Gen::A, j, -1);
            CHECK(ops.nth_product(ti, 0, tj).is_zero());
            CHECK(ops.nth_product(ti, 1, tj).is_zero());
        }
}

TEST_CASE("nth_product matches apply_mode on one-generator states", "[vertex]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(12);
    RandomStates gen(ops.table(), rng);
    std::vector<std::pair<Gen, int>> weight1{{Gen::A, 1}, {Gen::A, 2}, {Gen::H, 1}, {Gen::H, 2}};
    for (int t = 0; t < 6; ++t) {
        State w = gen.state(2, 2, 2);
        for (auto [g, idx] : weight1)
            for (long n = -3; n <= 3; ++n)
                CHECK(ops.nth_product(State::one_mode(g, idx, -1), n, w) ==
                      ops.apply_mode_plain(g, idx, static_cast<int>(n), w));
        // Primary state of the b-field is its zero mode on the vacuum, x_j|0>.
        for (int j = 1; j <= ops.table().N; ++j) {
            State v = State::vacuum(RingElement::variable(ops.table().var(j)));
            for (long n = -3; n <= 3; ++n)
                CHECK(ops.nth_product(v, n, w) ==
                      ops.apply_mode_plain(Gen::B, j, static_cast<int>(n), w));
        }
    }
}

TEST_CASE("weight-1 skew symmetry: x0y + y0x = d(x1y)", "[vertex]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(13);
    RandomStates gen(ops.table(), rng);
    for (int t = 0; t < 12; ++t) {
        State x = gen.homogeneous(1, 2, 3);
        State y = gen.homogeneous(1, 2, 3);
        State lhs = ops.nth_product(x, 0, y) + ops.nth_product(y, 0, x);
        State rhs = ops.translate(ops.nth_product(x, 1, y));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("vanishing bound of a field expansion", "[vertex]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(14);
    RandomStates gen(ops.table(), rng);
    for (int t = 0; t < 8; ++t) {
        FieldExpansion f{&ops, gen.state(2, 2, 2)};
        State w = gen.state(2, 2, 2);
        long bound = f.vanishing_bound(w);
        CHECK(f(bound, w).is_zero());
        CHECK(f(bound + 1, w).is_zero());
    }
}

TEST_CASE("Borcherds identity: vacuum and pinned instances", "[vertex]") {
    FockOps ops = beta_gamma(1);
    State a = State::one_mode(Gen::A, 1, -1);
    State b = State::vacuum(RingElement::variable("x"));
    State c = State::one_mode(Gen::B, 1, -1);
    CHECK(check_borcherds(ops, State::vacuum(), b, c, 2, -1, 0).is_zero());
    CHECK(check_borcherds(ops, a, b, c, 0, 0, -1).is_zero());
}

TEST_CASE("Borcherds identity on random triples", "[vertex]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(7);
    RandomStates gen(ops.table(), rng);
    std::uniform_int_distribution<int> mode(-3, 3);
    for (int t = 0; t < 25; ++t) {
        State a = gen.state(3, 2, 2);
        State b = gen.state(3, 2, 2);
        State c = gen.state(3, 2, 2);
        long m = mode(rng), n = mode(rng), k = mode(rng);
        State r = check_borcherds(ops, a, b, c, m, n, k);
        INFO("m=" << m << " n=" << n << " k=" << k);
        CHECK(r.is_zero());
    }
}

TEST_CASE("slice basis spans and coordinates invert", "[vertex]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(15);
    RandomStates gen(ops.table(), rng);
    for (int w = 0; w <= 3; ++w) {
        SliceBasis basis = slice_basis(ops.table(), w, 2);
        for (int t = 0; t < 4; ++t) {
            State s = gen.homogeneous(w, 2, 3);
            CHECK(state_from_coords(slice_coords(s, basis), basis) == s);
        }
    }
}

TEST_CASE("Lie algebra defining relation reduces to zero", "[lie]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(16);
    RandomStates gen(ops.table(), rng);
    for (int t = 0; t < 8; ++t) {
        State a = gen.homogeneous(1, 2, 2);
        for (int n = -2; n <= 2; ++n) {
            LieElement x;
            x.add(n, ops.translate(a));
            x.add(n, Scalar(n + 1) * a);
            CHECK(lie_normal_form(ops, x).is_zero());
        }
    }
    // Mixed weights too: da + (n + H)a with H the grading operator.
    for (int t = 0; t < 4; ++t) {
        State a = gen.state(2, 2, 2);
        for (int n = -1; n <= 1; ++n) {
            LieElement x;
            x.add(n, ops.translate(a));
            for (const auto& [w, part] : a.weight_decompose()) x.add(n, Scalar(n + w) * part);
            CHECK(lie_normal_form(ops, x).is_zero());
        }
    }
}

TEST_CASE("bracket of vector field and coordinate", "[lie]") {
    FockOps ops = beta_gamma(1);
    LieElement tau, x;
    tau.add(0, State::one_mode(Gen::A, 1, -1));
    x.add(0, State::vacuum(RingElement::variable("x")));
    LieElement expect;
    expect.add(0, State::vacuum());
    CHECK(borcherds_bracket(ops, tau, x) == expect);
}

TEST_CASE("bracket is skew and satisfies Jacobi", "[lie]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(17);
    RandomStates gen(ops.table(), rng);
    std::uniform_int_distribution<int> tpow(-1, 1);
    for (int t = 0; t < 10; ++t) {
        LieElement x, y, z;
        x.add(tpow(rng), gen.homogeneous(t % 3, 1, 2));
        y.add(tpow(rng), gen.homogeneous((t + 1) % 3, 1, 2));
        z.add(tpow(rng), gen.homogeneous((t + 2) % 3, 1, 2));
        LieElement xy = borcherds_bracket(ops, x, y);
        LieElement yx = borcherds_bracket(ops, y, x);
        LieElement sum = xy;
        for (const auto& [n, s] : yx.terms) sum.add(n, s);
        CHECK(lie_normal_form(ops, sum).is_zero());
        // Jacobi: [[x,y],z] + [[y,z],x] + [[z,x],y] = 0.
        LieElement j1 = borcherds_bracket(ops, xy, z);
        LieElement j2 = borcherds_bracket(ops, borcherds_bracket(ops, y, z), x);
        LieElement j3 = borcherds_bracket(ops, borcherds_bracket(ops, z, x), y);
        LieElement total = j1;
        for (const auto& [n, s] : j2.terms) total.add(n, s);
        for (const auto& [n, s] : j3.terms) total.add(n, s);
        CHECK(lie_normal_form(ops, total).is_zero());
    }
}

TEST_CASE("bracket action equals operator commutator", "[lie]") {
    FockOps ops = mixed_chart();
    std::mt19937_64 rng(18);
    RandomStates gen(ops.table(), rng);
    std::uniform_int_distribution<int> tpow(-1, 1);
    for (int t = 0; t < 10; ++t) {
        LieElement x, y;
        x.add(tpow(rng), gen.homogeneous(1 + t % 2, 1, 2));
        y.add(tpow(rng), gen.homogeneous(1 + (t + 1) % 2, 1, 2));
        State m = gen.state(2, 2, 2);
        State lhs = lie_act(ops, borcherds_bracket(ops, x, y), m);
        State rhs = lie_act(ops, x, lie_act(ops, y, m)) - lie_act(ops, y, lie_act(ops, x, m));
        CHECK(lhs == rhs);
    }
}
