#pragma once

// Chartwise Fock states over a free-field generator table, and the mode
// calculus on them.
//
// Index conventions. Fields are expanded as
//     a^i(z) = sum_n a^i_n z^{-n-1}      (weight 1)
//     b^j(z) = sum_n b^j_n z^{-n}        (weight 0)
//     h_k(z) = sum_n h_k,n z^{-n-1}      (weight 1)
// so the stored mode index n of a generator is its conformal-weight index:
// g_n maps weight l to weight l - n. The relation to the plain (n)-product
// index is v_k = v_(k + weight - 1); for a and h the two coincide, for b the
// plain index is k - 1. Nonzero commutators:
//     [a^i_m, b^j_n] = delta_{m,-n} delta_{i,j}
//     [h_k,m, h_l,n] = m <h_k,h_l> delta_{m+n,0}
// Creation modes are n <= -1; b^j_0 is multiplication by the chart variable
// x_j and is absorbed into the ring coefficient of a state.

#include "vxcalc/ring.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vxcalc {

enum class Gen { A, B, H };

inline int gen_weight(Gen g) { return g == Gen::B ? 0 : 1; }
inline char gen_char(Gen g) { return g == Gen::A ? 'a' : (g == Gen::B ? 'b' : 'h'); }

struct Mode {
    Gen kind;
    int idx;  // generator number, 1-based
    int n;    // conformal-weight mode index

    // Canonical monomial order: kind, then index, then mode descending.
    friend auto operator<=>(const Mode& x, const Mode& y) {
        if (auto c = x.kind <=> y.kind; c != 0) return c;
        if (auto c = x.idx <=> y.idx; c != 0) return c;
        return y.n <=> x.n;
    }
    friend bool operator==(const Mode&, const Mode&) = default;
};

// Plain-index <-> conformal-weight conversion for a generator mode.
inline int plain_index(Gen g, int conformal_n) { return conformal_n + gen_weight(g) - 1; }
inline int conformal_index(Gen g, int plain_n) { return plain_n - gen_weight(g) + 1; }

// A multiset of creation modes (all n <= -1), applied to the vacuum.
// `component` distinguishes the free generators of an induced module;
// it is 0 for vertex-algebra states.
struct CreationMonomial {
    std::vector<Mode> modes;  // kept sorted
    int component = 0;

    int weight() const {
        int w = 0;
        for (const auto& m : modes) w -= m.n;
        return w;
    }
    void insert(const Mode& m) {
        modes.insert(std::upper_bound(modes.begin(), modes.end(), m), m);
    }
    CreationMonomial without(std::size_t pos) const {
        CreationMonomial r = *this;
        r.modes.erase(r.modes.begin() + static_cast<long>(pos));
        return r;
    }
    friend auto operator<=>(const CreationMonomial& x, const CreationMonomial& y) {
        if (auto c = x.component <=> y.component; c != 0) return c;
        return x.modes <=> y.modes;
    }
    friend bool operator==(const CreationMonomial&, const CreationMonomial&) = default;
};

// Ring-coefficient linear combination of creation monomials.
class State {
public:
    State() = default;
    static State vacuum(const RingElement& coeff = RingElement(1)) {
        State s;
        s.add(CreationMonomial{}, coeff);
        return s;
    }
    static State one_mode(Gen g, int idx, int n, const RingElement& coeff = RingElement(1)) {
        CreationMonomial m;
        m.insert(Mode{g, idx, n});
        State s;
        s.add(m, coeff);
        return s;
    }

    const std::map<CreationMonomial, RingElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const CreationMonomial& m, const RingElement& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    State& operator+=(const State& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    State& operator-=(const State& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend State operator+(State a, const State& b) { return a += b; }
    friend State operator-(State a, const State& b) { return a -= b; }
    State operator-() const {
        State r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend State operator*(const Scalar& s, const State& st) {
        State r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : st.terms_) r.terms_[m] = RingElement(s) * c;
        return r;
    }
    friend bool operator==(const State& a, const State& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const State& a, const State& b) { return !(a == b); }
    friend bool operator<(const State& a, const State& b) { return a.terms_ < b.terms_; }

    // Multiplication by a ring element (a product of b_0 modes); commutes
    // with every creation mode, so it acts on coefficients directly.
    State mul_coeff(const RingElement& f) const {
        State r;
        for (const auto& [m, c] : terms_) r.add(m, f * c);
        return r;
    }

    int top_weight() const {
        int w = 0;
        for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
        return w;
    }
    int coeff_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, c.degree());
        return d;
    }

    std::map<int, State> weight_decompose() const {
        std::map<int, State> parts;
        for (const auto& [m, c] : terms_) parts[m.weight()].add(m, c);
        return parts;
    }
    State weight_part(int w) const {
        State r;
        for (const auto& [m, c] : terms_)
            if (m.weight() == w) r.add(m, c);
        return r;
    }
    bool is_homogeneous() const { return weight_decompose().size() <= 1; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (const auto& md : m.modes) {
                out += std::string(1, gen_char(md.kind)) + "[" + std::to_string(md.idx) +
                       "](" + std::to_string(md.n) + ")";
            }
            if (m.component != 0) out += "e" + std::to_string(m.component);
            out += "|0>";
        }
        return out;
    }

private:
    std::map<CreationMonomial, RingElement> terms_;
};

// The free-field alphabet of a chart: N symplectic pairs (a^i, b^i), H
// Heisenberg generators with a symmetric Gram matrix, and the chart ring
// variables identified with the b^i_0 action.
struct GeneratorTable {
    int N = 0;
    int H = 0;
    std::vector<std::vector<Scalar>> gram;  // H x H, symmetric
    std::vector<std::string> vars;          // size N; vars[i-1] <-> b^i_0

    static GeneratorTable make(int n_pairs, int n_heis,
                               std::vector<std::vector<Scalar>> gram_in = {},
                               std::string var_prefix = "x") {
        GeneratorTable t;
        t.N = n_pairs;
        t.H = n_heis;
        if (gram_in.empty())
            gram_in.assign(static_cast<std::size_t>(n_heis),
                           std::vector<Scalar>(static_cast<std::size_t>(n_heis), Scalar(0)));
        if (static_cast<int>(gram_in.size()) != n_heis)
            throw std::invalid_argument("GeneratorTable: gram size mismatch");
        for (int i = 0; i < n_heis; ++i)
            for (int j = 0; j < n_heis; ++j)
                if (gram_in[i][j] != gram_in[j][i])
                    throw std::invalid_argument("GeneratorTable: gram not symmetric");
        t.gram = std::move(gram_in);
        for (int i = 1; i <= n_pairs; ++i)
            t.vars.push_back(n_pairs == 1 ? var_prefix : var_prefix + std::to_string(i));
        return t;
    }

    const std::string& var(int idx) const { return vars.at(static_cast<std::size_t>(idx - 1)); }
};

// Mode calculus over a generator table. The vertex algebra itself uses this
// class directly; Fock-type modules derive and override the h-sector and the
// weight-zero action hooks.
class FockOps {
public:
    explicit FockOps(GeneratorTable table) : table_(std::move(table)) {}
    virtual ~FockOps() = default;

    const GeneratorTable& table() const { return table_; }

    // Exact action of the generator mode g_n (conformal-weight index).
    State apply_mode(Gen g, int idx, int n, const State& s) const {
        if (g == Gen::H) return apply_h(idx, n, s);
        State out;
        for (const auto& [mono, coeff] : s.terms()) {
            if (n <= -1) {
                CreationMonomial m = mono;
                m.insert(Mode{g, idx, n});
                out.add(m, coeff);
                continue;
            }
            if (g == Gen::B && n == 0) {
                out.add(mono, RingElement::variable(table_.var(idx)) * coeff);
                continue;
            }
            if (g == Gen::A && n == 0) {
                // [a_0, creation] = 0; on the vacuum line a_0 = d/dx_idx.
                State vac = a0_on_coefficient(idx, mono, coeff);
                out += vac;
                continue;
            }
            // Annihilation (n >= 1): contract with matching creation modes.
            Gen partner = (g == Gen::A) ? Gen::B : Gen::A;
            Scalar sign(g == Gen::A ? 1 : -1);
            for (std::size_t p = 0; p < mono.modes.size(); ++p) {
                const Mode& md = mono.modes[p];
                if (md.kind == partner && md.idx == idx && md.n == -n)
                    out.add(mono.without(p), RingElement(sign) * coeff);
            }
        }
        return out;
    }

    State apply_mode_plain(Gen g, int idx, int plain_n, const State& s) const {
        return apply_mode(g, idx, conformal_index(g, plain_n), s);
    }

    State apply_mode(const Mode& m, const State& s) const {
        return apply_mode(m.kind, m.idx, m.n, s);
    }

    // Normal-orders a raw mode word applied to coeff * |0>.
    State canonicalize(const std::vector<Mode>& word,
                       const RingElement& coeff = RingElement(1)) const {
        State s = State::vacuum(coeff);
        for (auto it = word.rbegin(); it != word.rend(); ++it) s = apply_mode(*it, s);
        return s;
    }

    // Translation operator: derivation with (d g)_(n) = -n g_(n-1).
    State translate(const State& s) const {
        State out;
        for (const auto& [mono, coeff] : s.terms()) {
            for (std::size_t p = 0; p < mono.modes.size(); ++p) {
                const Mode& md = mono.modes[p];
                int pl = plain_index(md.kind, md.n);
                CreationMonomial m = mono.without(p);
                m.insert(Mode{md.kind, md.idx, md.n - 1});
                out.add(m, RingElement(Scalar(-pl)) * coeff);
            }
            for (int j = 1; j <= table_.N; ++j) {
                RingElement d = coeff.derivative(table_.var(j));
                if (d.is_zero()) continue;
                CreationMonomial m = mono;
                m.insert(Mode{Gen::B, j, -1});
                out.add(m, d);
            }
        }
        return out;
    }

    // Conformal k-mode of a weight-zero element f of the chart ring:
    // the coefficient of z^{-k} in f(b(z)), Taylor-expanded about the zero
    // modes. Valid in every chart here because the function fields commute.
    State ring_mode(const RingElement& f, int k, const State& w) const {
        State out;
        int wt = w.top_weight();
        std::vector<std::pair<int, int>> pos;  // (var idx, mode m > 0)
        std::function<void(int, int, int)> enum_pos = [&](int min_var, int min_m, int budget) {
            // With the chosen positive part applied, attach every matching
            // negative part.
            int pos_total = 0;
            for (auto& [j, m] : pos) pos_total += m;
            int neg_total = pos_total - k;  // sum of |m| over negative modes
            if (neg_total >= 0) accumulate_negative(f, pos, neg_total, w, out);
            // Extend the positive multiset (nondecreasing to enumerate
            // multisets once).
            for (int j = min_var; j <= table_.N; ++j)
                for (int m = (j == min_var ? min_m : 1); m <= budget; ++m) {
                    pos.emplace_back(j, m);
                    enum_pos(j, m, budget - m);
                    pos.pop_back();
                }
        };
        enum_pos(1, 1, wt);
        return out;
    }

    // Plain n-th product v_(n) w, computed by peeling the leading creation
    // mode of v through the iterate expansion
    //   (g_(-k) u)_(n) = sum_{j>=0} (-1)^j C(-k,j)
    //        [ g_(-k-j) u_(n+j) - (-1)^k u_(n-k-j) g_(j) ].
    // The j-sums terminate by the grading bound a_(p) b in V_{i+j-p-1}.
    State nth_product(const State& v, long n, const State& w) const {
        State out;
        for (const auto& [mono, coeff] : v.terms()) {
            if (mono.modes.empty()) {
                out += ring_mode(coeff, static_cast<int>(n) + 1, w);
                continue;
            }
            Mode g = mono.modes.front();
            State u;
            u.add(mono.without(0), coeff);
            long kk = -plain_index(g.kind, g.n);  // peeled plain index is -kk
            assert(kk >= 1);
            long wt_bound = u.top_weight() + w.top_weight() - 1;
            for (long j = 0; n + j <= wt_bound; ++j) {
                State inner = nth_product(u, n + j, w);
                if (inner.is_zero()) continue;
                Scalar c = binomial(-kk, j);
                if (j % 2 != 0) c = -c;
                out += c * apply_mode_plain(g.kind, g.idx, static_cast<int>(-kk - j), inner);
            }
            Scalar s2(kk % 2 == 0 ? -1 : 1);  // -(-1)^k
            long gw_bound = gen_weight(g.kind) + w.top_weight() - 1;
            for (long j = 0; j <= gw_bound; ++j) {
                State gw = apply_mode_plain(g.kind, g.idx, static_cast<int>(j), w);
                if (gw.is_zero()) continue;
                Scalar c = binomial(-kk, j) * s2;
                if (j % 2 != 0) c = -c;
                out += c * nth_product(u, n - kk - j, gw);
            }
        }
        return out;
    }

    // Conformal-weight mode of a homogeneous state: x_k = x_(k + wt - 1).
    State conformal_mode(const State& x, int k, const State& w) const {
        State out;
        for (const auto& [wt, part] : x.weight_decompose())
            out += nth_product(part, k + wt - 1, w);
        return out;
    }

protected:
    // h_k,n action; free Heisenberg with the table Gram matrix by default.
    virtual State apply_h(int k, int n, const State& s) const {
        State out;
        for (const auto& [mono, coeff] : s.terms()) {
            if (n <= -1) {
                CreationMonomial m = mono;
                m.insert(Mode{Gen::H, k, n});
                out.add(m, coeff);
                continue;
            }
            if (n == 0) continue;  // h_0 kills the Fock vacuum line
            for (std::size_t p = 0; p < mono.modes.size(); ++p) {
                const Mode& md = mono.modes[p];
                if (md.kind != Gen::H || md.n != -n) continue;
                Scalar pairing = table_.gram[static_cast<std::size_t>(k - 1)]
                                            [static_cast<std::size_t>(md.idx - 1)];
                if (pairing.is_zero()) continue;
                out.add(mono.without(p), RingElement(Scalar(n) * pairing) * coeff);
            }
        }
        return out;
    }

    // a^idx_0 on the vacuum line; modules with a connection override this.
    virtual State a0_on_coefficient(int idx, const CreationMonomial& mono,
                                    const RingElement& coeff) const {
        State out;
        out.add(mono, coeff.derivative(table_.var(idx)));
        return out;
    }

private:
    void accumulate_negative(const RingElement& f,
                             const std::vector<std::pair<int, int>>& pos, int neg_total,
                             const State& w, State& out) const {
        // Apply the positive (annihilation) b-modes first.
        State base = w;
        for (const auto& [j, m] : pos) {
            base = apply_mode(Gen::B, j, m, base);
            if (base.is_zero()) return;
        }
        std::vector<std::pair<int, int>> neg;  // (var idx, |mode|)
        std::function<void(int, int, int)> rec = [&](int min_var, int min_m, int remaining) {
            if (remaining == 0) {
                emit_taylor_term(f, pos, neg, base, out);
                return;
            }
            for (int j = min_var; j <= table_.N; ++j)
                for (int m = (j == min_var ? min_m : 1); m <= remaining; ++m) {
                    neg.emplace_back(j, m);
                    rec(j, m, remaining - m);
                    neg.pop_back();
                }
        };
        rec(1, 1, neg_total);
    }

    void emit_taylor_term(const RingElement& f, const std::vector<std::pair<int, int>>& pos,
                          const std::vector<std::pair<int, int>>& neg, const State& base,
                          State& out) const {
        // Derivative order per variable and multiplicity factorials per
        // distinct (var, mode).
        RingElement df = f;
        std::map<std::pair<int, int>, int> mult;
        for (const auto& [j, m] : pos) ++mult[{j, m}];
        for (const auto& [j, m] : neg) ++mult[{j, -m}];
        std::map<int, int> order;
        for (const auto& [j, m] : pos) ++order[j];
        for (const auto& [j, m] : neg) ++order[j];
        for (const auto& [j, cnt] : order)
            for (int i = 0; i < cnt && !df.is_zero(); ++i) df = df.derivative(table_.var(j));
        if (df.is_zero()) return;
        Scalar denom(1);
        for (const auto& [jm, c] : mult)
            for (int i = 2; i <= c; ++i) denom *= Scalar(i);
        State term = base;
        for (const auto& [j, m] : neg) term = apply_mode(Gen::B, j, -m, term);
        out += (Scalar(1) / denom) * term.mul_coeff(df);
    }

    GeneratorTable table_;
};

}  // namespace vxcalc
