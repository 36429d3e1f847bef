#include "vxcalc/dsl.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace vxcalc;

namespace {

FockOps ops2() { return FockOps(GeneratorTable::make(2, 1, {{Scalar(1)}})); }

// Random ASTs restricted to grammar-canonical shapes, so the printed form
// reparses to the identical tree.
ExprAst random_chain(std::mt19937_64& rng, int depth);

ExprAst random_expr(std::mt19937_64& rng, int depth) {
    if (depth > 0 && rng() % 4 == 0) {
        ExprAst s;
        s.kind = ExprAst::Kind::Sum;
        std::size_t n = 2 + rng() % 2;
        for (std::size_t i = 0; i < n; ++i) s.kids.push_back(random_chain(rng, depth - 1));
        return s;
    }
    if (depth > 0 && rng() % 3 == 0) {
        ExprAst p;
        p.kind = ExprAst::Kind::Product;
        p.n = static_cast<int>(rng() % 5) - 2;
        p.kids.push_back(random_chain(rng, depth - 1));
        p.kids.push_back(random_chain(rng, depth - 1));
        return p;
    }
    return random_chain(rng, depth);
}

ExprAst random_chain(std::mt19937_64& rng, int depth) {
    switch (depth <= 0 ? rng() % 2 : rng() % 6) {
        case 0: {
            ExprAst v;
            v.kind = ExprAst::Kind::Vacuum;
            return v;
        }
        case 1: {
            ExprAst v;
            v.kind = ExprAst::Kind::Var;
            v.name = rng() % 2 == 0 ? "x1" : "x2";
            return v;
        }
        case 2: {
            ExprAst m;
            m.kind = ExprAst::Kind::Mode;
            switch (rng() % 3) {
                case 0: m.gen = Gen::A; break;
                case 1: m.gen = Gen::B; break;
                default: m.gen = Gen::H;
            }
            m.idx = 1 + static_cast<int>(rng() % 2);
            m.n = static_cast<int>(rng() % 7) - 3;
            m.kids.push_back(random_chain(rng, depth - 1));
            return m;
        }
        case 3: {
            ExprAst d;
            d.kind = ExprAst::Kind::D;
            d.kids.push_back(random_expr(rng, depth - 1));
            return d;
        }
        case 4: {
            ExprAst s;
            s.kind = ExprAst::Kind::ScalarLit;
            long p = static_cast<long>(rng() % 9) - 4;
            long q = 1 + static_cast<long>(rng() % 3);
            s.value = Scalar(p) / Scalar(q);
            s.kids.push_back(random_chain(rng, depth - 1));
            return s;
        }
        default: {
            ExprAst v;
            v.kind = ExprAst::Kind::Var;
            v.name = "x1";
            v.kids.push_back(random_chain(rng, depth - 1));
            return v;
        }
    }
}

}  // namespace

TEST_CASE("parsing the documented examples", "[dsl]") {
    FockOps ops = ops2();
    State tau1 = State::one_mode(Gen::A, 1, -1);

    CHECK(evaluate_expr(ops, parse_expr("a[1](-1) |0>")) == tau1);
    CHECK(evaluate_expr(ops, parse_expr("a[1](-1)|0>")) == tau1);

    // Zero mode of the vector field applied to its coordinate: the vacuum.
    State vac = evaluate_expr(ops, parse_expr("|0>"));
    CHECK(evaluate_expr(ops, parse_expr("a[1](-1)|0> _(0) x1 |0>")) == vac);
    CHECK(evaluate_expr(ops, parse_expr("a[1](-1)|0> _(0) x2 |0>")).is_zero());
}

TEST_CASE("evaluation of sums, scalars and translation", "[dsl]") {
    FockOps ops = ops2();
    State tau1 = State::one_mode(Gen::A, 1, -1);

    CHECK(evaluate_expr(ops, parse_expr("3/2 a[1](-1)|0> + -1/2 a[1](-1)|0>")) ==
          Scalar(1) * tau1);
    CHECK(evaluate_expr(ops, parse_expr("d(x1 |0>)")) ==
          ops.translate(evaluate_expr(ops, parse_expr("x1 |0>"))));
    // First product of the Heisenberg generator with itself: the pairing.
    CHECK(evaluate_expr(ops, parse_expr("h[1](-1)|0> _(1) h[1](-1)|0>")) ==
          evaluate_expr(ops, parse_expr("|0>")));
}

TEST_CASE("syntax errors carry column positions", "[dsl]") {
    CHECK_THROWS_WITH(parse_expr("a[1](-1"), Catch::Matchers::ContainsSubstring("column 7"));
    CHECK_THROWS_AS(parse_expr("a[1](-1"), ParseError);
    CHECK_THROWS_AS(parse_expr("a[1](-1) + "), ParseError);
    CHECK_THROWS_AS(parse_expr("1/0 |0>"), ParseError);
    CHECK_THROWS_AS(parse_expr("a[1](-1)"), ParseError);  // mode without operand
    CHECK_THROWS_AS(parse_expr("|0> |0>"), ParseError);
}

TEST_CASE("parse after print is the identity on random trees", "[dsl]") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 200; ++i) {
        ExprAst ast = random_expr(rng, 4);
        std::string text = print_expr(ast);
        INFO(text);
        ExprAst back = parse_expr(text);
        CHECK(back == ast);
        CHECK(print_expr(back) == text);
    }
}
