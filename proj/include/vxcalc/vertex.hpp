#pragma once

// n-th products of whole states, the Borcherds identity residual, and the
// Borcherds Lie algebra with its normal form.

#include "vxcalc/fock.hpp"
#include "vxcalc/linalg.hpp"

#include <map>
#include <utility>
#include <vector>

namespace vxcalc {

// A state viewed as a field: v_(n) acting on target states, zero for n
// large by the weight bound a_(k)b in V_{i+j-k-1}.
struct FieldExpansion {
    const FockOps* ops;
    State v;

    State operator()(long n, const State& w) const { return ops->nth_product(v, n, w); }
    // Smallest bound B with v_(n) w = 0 for all n >= B.
    long vanishing_bound(const State& w) const { return v.top_weight() + w.top_weight(); }
};

// LHS - RHS of the Borcherds identity
//   sum_j C(m,j) (a_(n+j) b)_(m+k-j) c
//     = sum_j (-1)^j C(n,j) { a_(m+n-j) b_(k+j) c - (-1)^n b_(n+k-j) a_(m+j) c }
// applied to c. The j-sums terminate by the weight bound: x_(p) y = 0
// once p >= wt(x) + wt(y).
// Residual of the cross identity with a, b in the algebra (products via
// `alg`) acting on a state c of the module `mod`; for c in the algebra
// itself pass the same operations twice.
inline State check_borcherds(const FockOps& alg, const FockOps& mod, const State& a,
                             const State& b, const State& c, long m, long n, long k) {
    long wa = a.top_weight(), wb = b.top_weight(), wc = c.top_weight();
    State lhs;
    for (long j = 0; n + j <= wa + wb - 1; ++j) {
        State inner = alg.nth_product(a, n + j, b);
        if (inner.is_zero()) continue;
        lhs += binomial(m, j) * mod.nth_product(inner, m + k - j, c);
    }
    State rhs;
    for (long j = 0; k + j <= wb + wc - 1; ++j) {
        State inner = mod.nth_product(b, k + j, c);
        if (inner.is_zero()) continue;
        Scalar coef = binomial(n, j);
        if (j % 2 != 0) coef = -coef;
        rhs += coef * mod.nth_product(a, m + n - j, inner);
    }
    Scalar sgn_n(n % 2 == 0 ? 1 : -1);
    for (long j = 0; m + j <= wa + wc - 1; ++j) {
        State inner = mod.nth_product(a, m + j, c);
        if (inner.is_zero()) continue;
        Scalar coef = binomial(n, j) * sgn_n;
        if (j % 2 == 0) coef = -coef;
        rhs += coef * mod.nth_product(b, n + k - j, inner);
    }
    return lhs - rhs;
}

inline State check_borcherds(const FockOps& ops, const State& a, const State& b, const State& c,
                             long m, long n, long k) {
    return check_borcherds(ops, ops, a, b, c, m, n, k);
}

// Deterministic basis of the slice {weight w, coefficient degree <= maxdeg}:
// pairs (creation monomial, coefficient monomial) in canonical order.
using SliceBasis = std::vector<std::pair<CreationMonomial, Monomial>>;

inline std::vector<CreationMonomial> creation_monomials(const GeneratorTable& t, int weight) {
    // Modes in canonical order; multisets built nondecreasingly.
    std::vector<std::pair<Gen, int>> gens;
    for (int i = 1; i <= t.N; ++i) gens.emplace_back(Gen::A, i);
    for (int i = 1; i <= t.N; ++i) gens.emplace_back(Gen::B, i);
    for (int r = 1; r <= t.H; ++r) gens.emplace_back(Gen::H, r);
    std::vector<CreationMonomial> out;
    CreationMonomial cur;
    // Choose modes with nonincreasing (gen position, -n) to enumerate each
    // multiset once; every creation mode carries weight -n >= 1.
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t gpos, int max_w, int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t g = gpos; g < gens.size(); ++g)
            for (int w = (g == gpos ? std::min(max_w, remaining) : remaining); w >= 1; --w) {
                cur.insert(Mode{gens[g].first, gens[g].second, -w});
                rec(g, w, remaining - w);
                cur.modes.erase(std::find(cur.modes.begin(), cur.modes.end(),
                                          Mode{gens[g].first, gens[g].second, -w}));
            }
    };
    rec(0, weight, weight);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Monomial> coeff_monomials(const GeneratorTable& t, int maxdeg) {
    std::vector<Monomial> out{Monomial{}};
    for (const auto& v : t.vars) {
        std::vector<Monomial> next;
        for (const auto& m : out)
            for (int e = 0; e + mono_degree(m) <= maxdeg; ++e) {
                Monomial mm = m;
                if (e > 0) mm[v] = e;
                next.push_back(std::move(mm));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline SliceBasis slice_basis(const GeneratorTable& t, int weight, int maxdeg) {
    SliceBasis basis;
    for (const auto& cm : creation_monomials(t, weight))
        for (const auto& m : coeff_monomials(t, maxdeg)) basis.emplace_back(cm, m);
    return basis;
}

// Coordinates of the weight-w part of s in a slice basis; throws if a term
// falls outside the basis (degree overflow or Laurent coefficient).
inline std::vector<Scalar> slice_coords(const State& s, const SliceBasis& basis) {
    std::map<std::pair<CreationMonomial, Monomial>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<Scalar> v(basis.size(), Scalar(0));
    for (const auto& [cm, coeff] : s.terms())
        for (const auto& [m, c] : coeff.terms()) {
            auto it = index.find({cm, m});
            if (it == index.end()) throw std::invalid_argument("slice_coords: term outside slice");
            v[it->second] = c;
        }
    return v;
}

inline State state_from_coords(const std::vector<Scalar>& v, const SliceBasis& basis) {
    State s;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!v[i].is_zero()) s.add(basis[i].first, RingElement::monomial(basis[i].second, v[i]));
    return s;
}

// An element of the Borcherds Lie algebra V x C[t,1/t] / (da + (n+H)a) x t^n.
struct LieElement {
    std::map<int, State> terms;  // t-power -> state

    void add(int n, const State& s) {
        if (s.is_zero()) return;
        auto it = terms.find(n);
        if (it == terms.end()) {
            terms[n] = s;
        } else {
            it->second += s;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const LieElement&, const LieElement&) = default;

    std::string str() const {
        if (terms.empty()) return "0";
        std::string out;
        for (const auto& [n, s] : terms) {
            if (!out.empty()) out += " + ";
            out += "(" + s.str() + ") t^" + std::to_string(n);
        }
        return out;
    }
};

// Normal form modulo (da + (n + wt(a)) a) x t^n: in each t-slot, rewrite the
// translate part of every positive weight downward so that no summand is a
// translate of a homogeneous state. The complement of im(translate) is fixed
// by deterministic pivoting, so the result is canonical.
inline LieElement lie_normal_form(const FockOps& ops, const LieElement& x) {
    LieElement out;
    for (const auto& [n, s0] : x.terms) {
        auto parts = s0.weight_decompose();
        State reduced;
        // Sweep weights from the top; rewriting weight w feeds weight w-1.
        while (!parts.empty()) {
            auto it = std::prev(parts.end());
            int w = it->first;
            State part = it->second;
            parts.erase(it);
            if (w == 0 || part.is_zero()) {
                reduced += part;
                continue;
            }
            int deg = part.coeff_degree() + 1;
            SliceBasis src = slice_basis(ops.table(), w - 1, deg);
            SliceBasis dst = slice_basis(ops.table(), w, deg);
            RationalMatrix d(dst.size(), src.size());
            for (std::size_t c = 0; c < src.size(); ++c) {
                State basis_state;
                basis_state.add(src[c].first, RingElement::monomial(src[c].second, Scalar(1)));
                auto col = slice_coords(ops.translate(basis_state), dst);
                for (std::size_t r = 0; r < dst.size(); ++r) d.at(r, c) = col[r];
            }
            auto sol = solve_decompose(d, slice_coords(part, dst));
            reduced += state_from_coords(sol.residual, dst);
            State u = state_from_coords(sol.solution, src);
            // da x t^n = -(n + w - 1) a x t^n for a of weight w-1.
            State drop = Scalar(-(n + w - 1)) * u;
            if (!drop.is_zero()) {
                auto dparts = drop.weight_decompose();
                for (auto& [dw, dp] : dparts) {
                    auto pit = parts.find(dw);
                    if (pit == parts.end())
                        parts[dw] = dp;
                    else {
                        pit->second += dp;
                        if (pit->second.is_zero()) parts.erase(pit);
                    }
                }
            }
        }
        // The relation at a = |0> reads n |0> x t^n = 0, so constants die in
        // every slot but t^0.
        if (n != 0) {
            auto it = reduced.terms().find(CreationMonomial{});
            if (it != reduced.terms().end()) {
                Scalar c = it->second.constant_term();
                if (!c.is_zero()) reduced += State::vacuum(RingElement(-c));
            }
        }
        out.add(n, reduced);
    }
    return out;
}

// [a x t^n, b x t^l] = sum_j C(n + wt(a) - 1, j) (a_(j) b) x t^{n+l},
// homogeneous in a and extended bilinearly; result in normal form.
inline LieElement borcherds_bracket(const FockOps& ops, const LieElement& x, const LieElement& y) {
    LieElement out;
    for (const auto& [n, xs] : x.terms)
        for (const auto& [wa, a] : xs.weight_decompose())
            for (const auto& [l, b] : y.terms) {
                long jmax = wa + b.top_weight() - 1;
                for (long j = 0; j <= jmax; ++j) {
                    State p = ops.nth_product(a, j, b);
                    if (p.is_zero()) continue;
                    out.add(n + l, binomial(n + wa - 1, j) * p);
                }
            }
    return lie_normal_form(ops, out);
}

// Action of a x t^n on a state as the conformal mode a_n.
inline State lie_act(const FockOps& ops, const LieElement& x, const State& m) {
    State out;
    for (const auto& [n, s] : x.terms) out += ops.conformal_mode(s, n, m);
    return out;
}

}  // namespace vxcalc
