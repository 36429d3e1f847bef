#pragma once

// Weight <= 1 truncation of a chart algebra: the vertex algebroid
// operations, the nine structure axioms, the associated Lie algebroid with
// its h-sector and pairing, and central lifts of pairing-kernel elements.

#include "vxcalc/charts.hpp"
#include "vxcalc/linalg.hpp"

#include <string>
#include <vector>

namespace vxcalc {

// Weight-0 states are ring elements; anything else here is a data error.
inline RingElement ring_part(const State& s) {
    RingElement r;
    for (const auto& [m, c] : s.terms()) {
        if (!m.modes.empty()) throw std::invalid_argument("ring_part: positive-weight state");
        r += c;
    }
    return r;
}

// The sextuple (V0, V1, |0>, d, o, (0), (1)) realized through the chart
// engine. V0 = chart ring, V1 = weight-1 states.
struct OneTruncated {
    const Chart* chart = nullptr;

    OneTruncated() = default;
    explicit OneTruncated(const Chart* c) : chart(c) {}
    virtual ~OneTruncated() = default;

    const FockOps& ops() const { return *chart->ops; }

    State opm(const RingElement& f, const State& v) const {
        return ops().nth_product(State::vacuum(f), -1, v);
    }
    State zero(const State& x, const State& y) const { return ops().nth_product(x, 0, y); }
    RingElement one(const State& x, const State& y) const {
        return ring_part(ops().nth_product(x, 1, y));
    }
    State dd(const RingElement& f) const { return ops().translate(State::vacuum(f)); }
    virtual RingElement anchor(const State& v, const RingElement& f) const {
        return ring_part(ops().nth_product(v, 0, State::vacuum(f)));
    }

    // Default sample sets for axiom checking: all coordinate monomials of
    // degree <= 3, and the frame lifts with a few o-multiples.
    std::vector<RingElement> sample_v0() const {
        std::vector<RingElement> fs;
        for (const auto& m : coeff_monomials(chart->table(), 3))
            fs.push_back(RingElement::monomial(m, Scalar(1)));
        return fs;
    }
    std::vector<State> sample_v1() const {
        std::vector<State> vs;
        for (const auto& t : chart->tau) vs.push_back(t);
        for (const auto& w : chart->omega) vs.push_back(w);
        for (const auto& h : chart->hgen) vs.push_back(h);
        RingElement x1 = RingElement::variable(chart->table().var(1));
        vs.push_back(opm(x1, chart->tau[0]));
        vs.push_back(opm(x1 * x1, chart->omega[0]));
        if (!chart->hgen.empty()) vs.push_back(opm(x1, chart->hgen[0]));
        return vs;
    }
};

inline OneTruncated extract_truncation(const Chart& c) { return OneTruncated(&c); }

// The nine vertex-algebroid axioms, evaluated exactly on the sample sets.
inline Report check_algebroid_axioms(const OneTruncated& t) {
    Report rep;
    rep.command = "axioms";
    rep.params["chart"] = t.chart->name;
    auto fs = t.sample_v0();
    auto vs = t.sample_v1();

    auto run = [&rep](const std::string& name, auto&& residuals) {
        std::string witness;
        bool ok = residuals(witness);
        rep.check(name, ok, witness);
    };

    run("assoc: f o (g o v) - (fg) o v", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& g : fs)
                for (const auto& v : vs) {
                    State lhs = t.opm(f, t.opm(g, v)) - t.opm(f * g, v);
                    State rhs = t.opm(t.anchor(v, f), t.dd(g)) +
                                t.opm(t.anchor(v, g), t.dd(f));
                    if (lhs != rhs) {
                        w = (lhs - rhs).str();
                        return false;
                    }
                }
        return true;
    });
    run("leibniz: x0 (f o y)", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& x : vs)
                for (const auto& y : vs) {
                    State lhs = t.zero(x, t.opm(f, y));
                    State rhs = t.opm(t.anchor(x, f), y) + t.opm(f, t.zero(x, y));
                    if (lhs != rhs) {
                        w = (lhs - rhs).str();
                        return false;
                    }
                }
        return true;
    });
    run("skew: x0y + y0x = d(x1y)", [&](std::string& w) {
        for (const auto& x : vs)
            for (const auto& y : vs) {
                State lhs = t.zero(x, y) + t.zero(y, x);
                State rhs = t.dd(t.one(x, y));
                if (lhs != rhs) {
                    w = (lhs - rhs).str();
                    return false;
                }
            }
        return true;
    });
    run("anchor o-linearity", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& v : vs)
                for (const auto& g : fs) {
                    RingElement lhs = t.anchor(t.opm(f, v), g);
                    RingElement rhs = f * t.anchor(v, g);
                    if (lhs != rhs) {
                        w = (lhs - rhs).str();
                        return false;
                    }
                }
        return true;
    });
    run("(f o x)1y = f(x1y) - pi(x)pi(y)f", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& x : vs)
                for (const auto& y : vs) {
                    RingElement lhs = t.one(t.opm(f, x), y);
                    RingElement rhs = f * t.one(x, y) - t.anchor(x, t.anchor(y, f));
                    if (lhs != rhs) {
                        w = (lhs - rhs).str();
                        return false;
                    }
                }
        return true;
    });
    run("invariance of the pairing", [&](std::string& w) {
        for (const auto& v : vs)
            for (const auto& x : vs)
                for (const auto& y : vs) {
                    RingElement lhs = t.anchor(v, t.one(x, y));
                    RingElement rhs = t.one(t.zero(v, x), y) + t.one(x, t.zero(v, y));
                    if (lhs != rhs) {
                        w = (lhs - rhs).str();
                        return false;
                    }
                }
        return true;
    });
    run("d is a derivation", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& g : fs) {
                State lhs = t.dd(f * g);
                State rhs = t.opm(f, t.dd(g)) + t.opm(g, t.dd(f));
                if (lhs != rhs) {
                    w = (lhs - rhs).str();
                    return false;
                }
            }
        return true;
    });
    run("v0 df = d(pi(v)f)", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& v : vs) {
                State lhs = t.zero(v, t.dd(f));
                State rhs = t.dd(t.anchor(v, f));
                if (lhs != rhs) {
                    w = (lhs - rhs).str();
                    return false;
                }
            }
        return true;
    });
    run("v1 df = pi(v)f", [&](std::string& w) {
        for (const auto& f : fs)
            for (const auto& v : vs) {
                RingElement lhs = t.one(v, t.dd(f));
                RingElement rhs = t.anchor(v, f);
                if (lhs != rhs) {
                    w = (lhs - rhs).str();
                    return false;
                }
            }
        return true;
    });
    return rep;
}

// Class of a weight-1 state in L = V1 / (V0 o dV0): the one-form part dies,
// leaving ring coefficients on the frame {tau_i} and the h-sector {h_k}.
struct LieClass {
    std::vector<RingElement> tau_coeff;  // size N
    std::vector<RingElement> h_coeff;    // size H

    bool is_zero() const {
        for (const auto& c : tau_coeff)
            if (!c.is_zero()) return false;
        for (const auto& c : h_coeff)
            if (!c.is_zero()) return false;
        return true;
    }
    friend bool operator==(const LieClass&, const LieClass&) = default;
};

inline LieClass lie_class(const GeneratorTable& t, const State& s) {
    LieClass cl;
    cl.tau_coeff.assign(static_cast<std::size_t>(t.N), RingElement());
    cl.h_coeff.assign(static_cast<std::size_t>(t.H), RingElement());
    for (const auto& [m, c] : s.terms()) {
        if (m.modes.size() != 1 || m.modes[0].n != -1)
            throw std::invalid_argument("lie_class: not a weight-1 state");
        const Mode& md = m.modes[0];
        if (md.kind == Gen::A) cl.tau_coeff[static_cast<std::size_t>(md.idx - 1)] += c;
        if (md.kind == Gen::H) cl.h_coeff[static_cast<std::size_t>(md.idx - 1)] += c;
        // Gen::B terms are the one-form part and vanish in the quotient.
    }
    return cl;
}

struct LieAlgebroid {
    const Chart* chart;
    // bracket[i][j] = class of [frame_i, frame_j]; frame order tau_1..tau_N,
    // h_1..h_H.
    std::vector<std::vector<LieClass>> bracket;
    // anchor[i][j] = pi(frame_i)(x_j).
    std::vector<std::vector<RingElement>> anchor;
    // pairing restricted to the h-sector, recovered from the (1)-products.
    std::vector<std::vector<Scalar>> h_pairing;
};

// Builds the frame bracket/anchor tables and checks that the 0-th product
// descends to the quotient on the sample set.
inline LieAlgebroid quotient_lie_algebroid(const OneTruncated& t) {
    const Chart& c = *t.chart;
    const GeneratorTable& tab = c.table();
    std::vector<State> frame = c.tau;
    frame.insert(frame.end(), c.hgen.begin(), c.hgen.end());

    // Descent: [x, f o dg] must be a one-form (zero class) for samples.
    for (const auto& x : frame)
        for (const auto& f : t.sample_v0())
            for (const auto& g : t.sample_v0()) {
                State w = t.zero(x, t.opm(f, t.dd(g)));
                if (!lie_class(tab, w).is_zero())
                    throw std::logic_error(
                        "quotient_lie_algebroid: 0-product does not descend");
            }

    LieAlgebroid l;
    l.chart = &c;
    for (const auto& x : frame) {
        std::vector<LieClass> row;
        for (const auto& y : frame) row.push_back(lie_class(tab, t.zero(x, y)));
        l.bracket.push_back(std::move(row));
        std::vector<RingElement> arow;
        for (int j = 1; j <= tab.N; ++j)
            arow.push_back(t.anchor(x, RingElement::variable(tab.var(j))));
        l.anchor.push_back(std::move(arow));
    }
    for (int k = 0; k < tab.H; ++k) {
        std::vector<Scalar> row;
        for (int r = 0; r < tab.H; ++r)
            row.push_back(t.one(c.hgen[static_cast<std::size_t>(k)],
                                c.hgen[static_cast<std::size_t>(r)])
                              .constant_term());
        l.h_pairing.push_back(std::move(row));
    }
    return l;
}

struct CenterData {
    // Basis of z = ker <,> on the constant h-sector, as coefficient vectors.
    std::vector<std::vector<Scalar>> z_basis;
};

inline CenterData pairing_and_center(const LieAlgebroid& l) {
    std::size_t h = l.h_pairing.size();
    RationalMatrix m(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) m.at(i, j) = l.h_pairing[i][j];
    return CenterData{kernel_basis(m)};
}

// Unique central lift s(h) = s' - sum_i (tau_i (1) s') o omega_i; the result
// is checked to pair to zero with every frame lift and to be annihilated by
// their 0-products, which fails exactly when h is not in the pairing kernel.
inline State central_lift(const OneTruncated& t, const State& s_prime) {
    const Chart& c = *t.chart;
    State s = s_prime;
    for (std::size_t i = 0; i < c.tau.size(); ++i)
        s -= t.opm(t.one(c.tau[i], s_prime), c.omega[i]);
    std::vector<State> frame = c.tau;
    frame.insert(frame.end(), c.hgen.begin(), c.hgen.end());
    for (const auto& x : frame) {
        if (!t.one(x, s).is_zero() || !t.zero(x, s).is_zero())
            throw std::invalid_argument("central_lift: input class is not central");
    }
    return s;
}

}  // namespace vxcalc
