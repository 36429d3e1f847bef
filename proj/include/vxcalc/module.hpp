#pragma once

// Fock-type modules over a chart algebra: central characters, the singular
// subspace, the canonical filtration, the descent rewriting over Sing, the
// zero-mode (Zhu) action, and induction from connection presentations.

#include "vxcalc/algebroid.hpp"
#include "vxcalc/charts.hpp"
#include "vxcalc/vertex.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vxcalc {

// chi: mode index -> coordinates in the pairing-kernel basis (chi_n);
// theta: functional on the full constant h-sector.
struct CentralCharacter {
    std::map<int, std::vector<Scalar>> chi;
    std::vector<Scalar> theta;

    std::vector<Scalar> chi_at(int n, std::size_t dim) const {
        auto it = chi.find(n);
        if (it == chi.end()) return std::vector<Scalar>(dim, Scalar(0));
        if (it->second.size() != dim)
            throw std::invalid_argument("CentralCharacter: chi dimension mismatch");
        return it->second;
    }
};

// Generators with flat connection matrices over the chart ring: the module
// F = O^rank with d/dx_i acting as derivative + conn[i].
struct FreePresentation {
    int rank = 1;
    // conn[i][r][c]: coefficient of e_r in d/dx_i applied to e_c.
    std::vector<std::vector<std::vector<RingElement>>> conn;
};

// Orthogonal (diagonal, not orthonormal) basis of a complement of the
// kernel of a symmetric matrix, by Gram-Schmidt with anisotropic pivots.
struct HSectorSplit {
    std::vector<std::vector<Scalar>> z_basis;  // pairing kernel
    std::vector<std::vector<Scalar>> u_basis;  // orthogonal complement
    std::vector<Scalar> diag;                  // <u_r, u_r> != 0
};

inline HSectorSplit split_h_sector(const std::vector<std::vector<Scalar>>& gram) {
    std::size_t h = gram.size();
    RationalMatrix g(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) g.at(i, j) = gram[i][j];
    HSectorSplit s;
    s.z_basis = kernel_basis(g);

    auto pair_vec = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
        Scalar r(0);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < h; ++j) r += a[i] * gram[i][j] * b[j];
        return r;
    };
    std::size_t want = h - s.z_basis.size();
    // Candidate vectors: standard basis, then pairwise sums (enough to find
    // an anisotropic vector whenever the residual form is nonzero).
    std::vector<std::vector<Scalar>> cands;
    for (std::size_t i = 0; i < h; ++i) {
        std::vector<Scalar> e(h, Scalar(0));
        e[i] = Scalar(1);
        cands.push_back(e);
    }
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i + 1; j < h; ++j) {
            std::vector<Scalar> e(h, Scalar(0));
            e[i] = Scalar(1);
            e[j] = Scalar(1);
            cands.push_back(e);
        }
    while (s.u_basis.size() < want) {
        bool found = false;
        for (const auto& cand : cands) {
            std::vector<Scalar> v = cand;
            for (std::size_t r = 0; r < s.u_basis.size(); ++r) {
                Scalar c = pair_vec(v, s.u_basis[r]) / s.diag[r];
                for (std::size_t i = 0; i < h; ++i) v[i] -= c * s.u_basis[r][i];
            }
            Scalar d = pair_vec(v, v);
            if (d.is_zero()) continue;
            s.u_basis.push_back(std::move(v));
            s.diag.push_back(d);
            found = true;
            break;
        }
        if (!found)
            throw std::logic_error("split_h_sector: no anisotropic vector in complement");
    }
    return s;
}

// Fock-type module: free action of a/b modes, h-sector decomposed through
// the pairing kernel (acting by the central character) and its orthogonal
// complement (free Heisenberg with tracked diagonal), optional connection
// on the rank-many weight-zero components.
class VModule : public FockOps {
public:
    VModule(std::shared_ptr<const Chart> chart, CentralCharacter cc,
            FreePresentation pres = FreePresentation{})
        : FockOps(chart->table()),
          chart_(std::move(chart)),
          cc_(std::move(cc)),
          split_(split_h_sector(table().gram)),
          pres_(std::move(pres)) {
        const GeneratorTable& t = table();
        std::size_t h = static_cast<std::size_t>(t.H);
        if (cc_.theta.size() != h)
            throw std::invalid_argument("VModule: theta dimension mismatch");
        for (const auto& [n, v] : cc_.chi) {
            if (v.size() != split_.z_basis.size())
                throw std::invalid_argument("VModule: chi dimension mismatch");
            bool nonzero = false;
            for (const auto& c : v) nonzero = nonzero || !c.is_zero();
            if (n > 0 && nonzero)
                throw std::invalid_argument(
                    "VModule: chi_n != 0 for n > 0 admits no nonzero half-integrable module");
        }
        // theta restricted to the pairing kernel must equal chi_0.
        auto chi0 = cc_.chi_at(0, split_.z_basis.size());
        for (std::size_t i = 0; i < split_.z_basis.size(); ++i) {
            Scalar dot(0);
            for (std::size_t k = 0; k < h; ++k) dot += cc_.theta[k] * split_.z_basis[i][k];
            if (dot != chi0[i])
                throw std::invalid_argument("VModule: theta does not restrict to chi_0");
        }
        // Decompose each h-generator e_k over (z_basis | u_basis).
        std::size_t nz = split_.z_basis.size(), nu = split_.u_basis.size();
        RationalMatrix m(h, nz + nu);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < nz; ++j) m.at(i, j) = split_.z_basis[j][i];
            for (std::size_t j = 0; j < nu; ++j) m.at(i, nz + j) = split_.u_basis[j][i];
        }
        for (std::size_t k = 0; k < h; ++k) {
            std::vector<Scalar> ek(h, Scalar(0));
            ek[k] = Scalar(1);
            auto sol = solve_decompose(m, ek);
            for (const auto& r : sol.residual)
                if (!r.is_zero()) throw std::logic_error("VModule: h-sector split not a basis");
            decomp_.push_back(sol.solution);
        }
        // Flatness of the connection.
        if (!pres_.conn.empty()) {
            if (static_cast<int>(pres_.conn.size()) != t.N)
                throw std::invalid_argument("VModule: presentation error (connection arity)");
            for (int i = 0; i < t.N; ++i)
                for (int j = i + 1; j < t.N; ++j) {
                    auto& a = pres_.conn[static_cast<std::size_t>(i)];
                    auto& b = pres_.conn[static_cast<std::size_t>(j)];
                    for (int r = 0; r < pres_.rank; ++r)
                        for (int c = 0; c < pres_.rank; ++c) {
                            RingElement curv = b[r][c].derivative(t.var(i + 1)) -
                                               a[r][c].derivative(t.var(j + 1));
                            for (int s = 0; s < pres_.rank; ++s)
                                curv += a[r][s] * b[s][c] - b[r][s] * a[s][c];
                            if (!curv.is_zero())
                                throw std::invalid_argument(
                                    "VModule: presentation error (connection not flat)");
                        }
                }
        }
    }

    const Chart& chart() const { return *chart_; }
    const CentralCharacter& character() const { return cc_; }
    int rank() const { return pres_.rank; }
    int n_nondeg() const { return static_cast<int>(split_.u_basis.size()); }
    const Scalar& nondeg_diag(int r) const {
        return split_.diag.at(static_cast<std::size_t>(r - 1));
    }
    const HSectorSplit& h_split() const { return split_; }

    // Module Heisenberg mode for the r-th orthogonal-complement generator.
    State heis_mode(int r, int n, const State& s) const {
        if (rank() == 0) return State();
        State out;
        for (const auto& [mono, coeff] : s.terms()) {
            if (n <= -1) {
                CreationMonomial m = mono;
                m.insert(Mode{Gen::H, r, n});
                out.add(m, coeff);
                continue;
            }
            if (n == 0) {
                // Zero mode of u_r: theta extended linearly.
                Scalar th(0);
                for (std::size_t k = 0; k < cc_.theta.size(); ++k)
                    th += cc_.theta[k] * split_.u_basis[static_cast<std::size_t>(r - 1)][k];
                if (!th.is_zero()) out.add(mono, RingElement(th) * coeff);
                continue;
            }
            for (std::size_t p = 0; p < mono.modes.size(); ++p) {
                const Mode& md = mono.modes[p];
                if (md.kind == Gen::H && md.idx == r && md.n == -n)
                    out.add(mono.without(p),
                            RingElement(Scalar(n) * nondeg_diag(r)) * coeff);
            }
        }
        return out;
    }

    State zero_state() const { return State(); }
    State component_vacuum(int c, const RingElement& coeff = RingElement(1)) const {
        if (c < 0 || c >= std::max(rank(), 1))
            throw std::invalid_argument("component_vacuum: bad component");
        if (rank() == 0) return State();
        CreationMonomial m;
        m.component = c;
        State s;
        s.add(m, coeff);
        return s;
    }

protected:
    // Action of the chart h-generator h_k: decomposed over the pairing
    // kernel (character scalars) and the orthogonal complement (free modes).
    State apply_h(int k, int n, const State& s) const override {
        if (rank() == 0) return State();
        if (n == 0) {
            Scalar th = cc_.theta.at(static_cast<std::size_t>(k - 1));
            return th.is_zero() ? State() : th * s;
        }
        const auto& d = decomp_.at(static_cast<std::size_t>(k - 1));
        std::size_t nz = split_.z_basis.size();
        State out;
        auto chin = cc_.chi_at(n, nz);
        Scalar central(0);
        for (std::size_t i = 0; i < nz; ++i) central += d[i] * chin[i];
        if (!central.is_zero()) out += central * s;
        for (std::size_t r = 0; r < split_.u_basis.size(); ++r)
            if (!d[nz + r].is_zero())
                out += d[nz + r] * heis_mode(static_cast<int>(r + 1), n, s);
        return out;
    }

    // a^i_0 = d/dx_i plus the connection matrix on components.
    State a0_on_coefficient(int idx, const CreationMonomial& mono,
                            const RingElement& coeff) const override {
        State out;
        if (rank() == 0) return out;
        out.add(mono, coeff.derivative(table().var(idx)));
        if (!pres_.conn.empty()) {
            const auto& a = pres_.conn.at(static_cast<std::size_t>(idx - 1));
            for (int r = 0; r < pres_.rank; ++r) {
                const RingElement& entry = a[static_cast<std::size_t>(r)]
                                            [static_cast<std::size_t>(mono.component)];
                if (entry.is_zero()) continue;
                CreationMonomial m = mono;
                m.component = r;
                out.add(m, entry * coeff);
            }
        }
        return out;
    }

private:
    std::shared_ptr<const Chart> chart_;
    CentralCharacter cc_;
    HSectorSplit split_;
    FreePresentation pres_;
    std::vector<std::vector<Scalar>> decomp_;  // e_k over (z | u)
};

inline VModule make_module(std::shared_ptr<const Chart> chart, CentralCharacter cc) {
    return VModule(std::move(chart), std::move(cc));
}

// Deterministic creation-monomial basis of the module weight slice,
// components included.
struct ModuleSliceBasis {
    std::vector<CreationMonomial> monos;
};

inline ModuleSliceBasis module_slice_basis(const VModule& m, int weight) {
    ModuleSliceBasis b;
    const GeneratorTable& t = m.table();
    GeneratorTable mt = t;
    mt.H = m.n_nondeg();  // module states carry only complement h-modes
    for (auto& cm : creation_monomials(mt, weight))
        for (int c = 0; c < m.rank(); ++c) {
            CreationMonomial withc = cm;
            withc.component = c;
            b.monos.push_back(withc);
        }
    return b;
}

// All positive generator-mode operators acting on a module weight slice.
// Positive a/b/h modes commute with b_0, so their matrices do not see the
// ring coefficient: kernels are computed on creation monomials alone and
// tensored with coefficient monomials afterwards.
inline std::vector<std::function<State(const State&)>> positive_mode_ops(const VModule& m,
                                                                         int max_n) {
    std::vector<std::function<State(const State&)>> ops;
    const GeneratorTable& t = m.table();
    for (int n = 1; n <= max_n; ++n) {
        for (int i = 1; i <= t.N; ++i) {
            ops.push_back([&m, i, n](const State& s) { return m.apply_mode(Gen::A, i, n, s); });
            ops.push_back([&m, i, n](const State& s) { return m.apply_mode(Gen::B, i, n, s); });
        }
        for (int r = 1; r <= m.n_nondeg(); ++r)
            ops.push_back([&m, r, n](const State& s) { return m.heis_mode(r, n, s); });
    }
    return ops;
}

struct SingBasis {
    // Kernel of all positive modes per weight, as creation-monomial states;
    // the full Sing slice is their span over coefficient monomials.
    std::map<int, std::vector<State>> kernel_states;
    int weight_cutoff = 0;
    int degree_cutoff = 0;

    std::vector<State> full_basis(const GeneratorTable& t) const {
        std::vector<State> out;
        for (const auto& [w, states] : kernel_states)
            for (const auto& s : states)
                for (const auto& mono : coeff_monomials(t, degree_cutoff))
                    out.push_back(s.mul_coeff(RingElement::monomial(mono, Scalar(1))));
        return out;
    }
};

inline SingBasis sing(const VModule& m, int weight_cutoff, int degree_cutoff) {
    SingBasis out;
    out.weight_cutoff = weight_cutoff;
    out.degree_cutoff = degree_cutoff;
    for (int w = 0; w <= weight_cutoff; ++w) {
        ModuleSliceBasis basis = module_slice_basis(m, w);
        // Stack the matrices of every positive mode, one row block each.
        std::vector<std::function<State(const State&)>> ops = positive_mode_ops(m, w);
        std::vector<std::map<CreationMonomial, std::size_t>> target_index(ops.size());
        std::vector<std::vector<std::map<std::size_t, Scalar>>> entries(ops.size());
        for (std::size_t o = 0; o < ops.size(); ++o) {
            entries[o].resize(basis.monos.size());
            for (std::size_t c = 0; c < basis.monos.size(); ++c) {
                State s;
                s.add(basis.monos[c], RingElement(1));
                State img = ops[o](s);
                for (const auto& [tm, tc] : img.terms()) {
                    auto [it, fresh] = target_index[o].try_emplace(tm, target_index[o].size());
                    entries[o][c][it->second] = tc.constant_term();
                }
            }
        }
        std::size_t total_rows = 0;
        for (const auto& ti : target_index) total_rows += ti.size();
        RationalMatrix mat(std::max<std::size_t>(total_rows, 1), basis.monos.size());
        std::size_t row0 = 0;
        for (std::size_t o = 0; o < ops.size(); ++o) {
            for (std::size_t c = 0; c < basis.monos.size(); ++c)
                for (const auto& [r, val] : entries[o][c]) mat.at(row0 + r, c) = val;
            row0 += target_index[o].size();
        }
        std::vector<State> states;
        for (const auto& vec : kernel_basis(mat)) {
            State s;
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (!vec[i].is_zero()) s.add(basis.monos[i], RingElement(vec[i]));
            if (!s.is_zero()) states.push_back(s);
        }
        out.kernel_states[w] = std::move(states);
    }
    return out;
}

// Least n such that every monomial in positive generator modes of total
// mode degree > n kills m; degrees above the top weight kill automatically.
inline int filtration_level(const VModule& m, const State& s) {
    if (s.is_zero()) return 0;
    int top = s.top_weight();
    struct Item {
        std::function<State(const State&)> op;
        int n;
    };
    const GeneratorTable& t = m.table();
    std::vector<Item> items;
    for (int n = 1; n <= top; ++n) {
        for (int i = 1; i <= t.N; ++i) {
            items.push_back({[&m, i, n](const State& x) { return m.apply_mode(Gen::A, i, n, x); }, n});
            items.push_back({[&m, i, n](const State& x) { return m.apply_mode(Gen::B, i, n, x); }, n});
        }
        for (int r = 1; r <= m.n_nondeg(); ++r)
            items.push_back({[&m, r, n](const State& x) { return m.heis_mode(r, n, x); }, n});
    }
    // Positive modes commute, so multisets suffice. Search degrees downward.
    for (int d = top; d >= 1; --d) {
        bool survives = false;
        std::function<void(std::size_t, int, const State&)> rec = [&](std::size_t from,
                                                                      int remaining,
                                                                      const State& cur) {
            if (survives || cur.is_zero()) return;
            if (remaining == 0) {
                survives = true;
                return;
            }
            for (std::size_t i = from; i < items.size(); ++i)
                if (items[i].n <= remaining) rec(i, remaining - items[i].n, items[i].op(cur));
        };
        rec(0, d, s);
        if (survives) return d;
    }
    return 0;
}

// A word of non-positive frame modes, applied left to right (leftmost
// outermost), with a singular vector it acts on.
struct OpToken {
    enum class Kind { VaMode, HeisMode };
    Kind kind;
    State va;           // VaMode: the acting state
    int idx = 0;        // HeisMode: complement index
    int n = 0;          // conformal mode index
    std::string label;  // display form
};

inline State apply_token(const VModule& m, const OpToken& t, const State& s) {
    if (t.kind == OpToken::Kind::HeisMode) return m.heis_mode(t.idx, t.n, s);
    return m.conformal_mode(t.va, t.n, s);
}

struct SingExpression {
    std::vector<std::pair<std::vector<OpToken>, State>> terms;

    State evaluate(const VModule& m) const {
        State out;
        for (const auto& [word, s] : terms) {
            State cur = s;
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                cur = apply_token(m, *it, cur);
            out += cur;
        }
        return out;
    }
    std::string str() const {
        if (terms.empty()) return "0";
        std::string out;
        for (const auto& [word, s] : terms) {
            if (!out.empty()) out += " + ";
            for (const auto& t : word) out += t.label + " ";
            out += "{" + s.str() + "}";
        }
        return out;
    }
};

namespace detail {

// One descent phase: channels of mutually commuting annihilation operators
// A_{c,n} with chosen partners B_{c,n} and scalar commutators
// [B,A] = lambda(c,n). Elements are rewritten as words in the B's applied
// to phase-invariant vectors via m'' = k lambda m + B A m,
// m = (k lambda)^{-1} (m'' - B m').
struct PhaseChannel {
    std::function<State(int n, const State&)> a;
    std::function<State(int n, const State&)> b;
    std::function<Scalar(int n)> lambda;
    std::function<OpToken(int n)> b_token;
};

inline void phase_rewrite(const VModule& m, const std::vector<PhaseChannel>& channels,
                          const State& s, const std::vector<OpToken>& prefix,
                          SingExpression& out, int& budget,
                          const std::function<void(const State&, const std::vector<OpToken>&)>&
                              on_invariant) {
    if (s.is_zero()) return;
    if (--budget <= 0)
        throw std::runtime_error("rewrite_to_sing: descent did not terminate");
    int top = s.top_weight();
    // Smallest n, then smallest channel, with nonzero degree.
    for (int n = 1; n <= top; ++n)
        for (std::size_t c = 0; c < channels.size(); ++c) {
            State am = channels[c].a(n, s);
            if (am.is_zero()) continue;
            int k = 1;
            State power = am;
            while (true) {
                State next = channels[c].a(n, power);
                if (next.is_zero()) break;
                power = next;
                ++k;
            }
            Scalar kl = Scalar(k) * channels[c].lambda(n);
            State bm = channels[c].b(-n, am);
            State m2 = kl * s + bm;  // A-nilpotency of m2 drops below k
            Scalar inv = Scalar(1) / kl;
            phase_rewrite(m, channels, inv * m2, prefix, out, budget, on_invariant);
            std::vector<OpToken> longer = prefix;
            longer.push_back(channels[c].b_token(-n));
            phase_rewrite(m, channels, (-inv) * am, longer, out, budget, on_invariant);
            return;
        }
    on_invariant(s, prefix);
}

}  // namespace detail

// Full descent: first the one-form channel, then the Heisenberg
// complement, then the vector-field channel; the surviving vectors are
// singular and the expression re-evaluates to the input exactly.
inline SingExpression rewrite_to_sing(const VModule& m, const State& s,
                                      int budget_limit = 200000) {
    const Chart& c = m.chart();
    const GeneratorTable& t = m.table();

    auto va_channel = [&](const State& a_state, const State& b_state, const std::string& bname) {
        detail::PhaseChannel ch;
        ch.a = [&m, a_state](int n, const State& x) { return m.conformal_mode(a_state, n, x); };
        ch.b = [&m, b_state](int n, const State& x) { return m.conformal_mode(b_state, n, x); };
        ch.b_token = [b_state, bname](int n) {
            return OpToken{OpToken::Kind::VaMode, b_state, 0, n,
                           bname + "(" + std::to_string(n) + ")"};
        };
        return ch;
    };

    std::vector<detail::PhaseChannel> phase3, phase2, phase1;
    for (int i = 1; i <= t.N; ++i) {
        auto ch = va_channel(c.omega[static_cast<std::size_t>(i - 1)],
                             c.tau[static_cast<std::size_t>(i - 1)],
                             "tau" + std::to_string(i));
        // [tau_{i,-n}, omega_{i,n}] = -n id.
        ch.lambda = [](int n) { return Scalar(-n); };
        phase3.push_back(ch);
    }
    for (int r = 1; r <= m.n_nondeg(); ++r) {
        detail::PhaseChannel ch;
        ch.a = [&m, r](int n, const State& x) { return m.heis_mode(r, n, x); };
        ch.b = [&m, r](int n, const State& x) { return m.heis_mode(r, n, x); };
        ch.lambda = [&m, r](int n) { return Scalar(-n) * m.nondeg_diag(r); };
        ch.b_token = [r](int n) {
            return OpToken{OpToken::Kind::HeisMode, State(), r, n,
                           "h" + std::to_string(r) + "(" + std::to_string(n) + ")"};
        };
        phase2.push_back(ch);
    }
    for (int i = 1; i <= t.N; ++i) {
        auto ch = va_channel(c.tau[static_cast<std::size_t>(i - 1)],
                             c.omega[static_cast<std::size_t>(i - 1)],
                             "omega" + std::to_string(i));
        // [omega_{i,-n}, tau_{i,n}] = -n id.
        ch.lambda = [](int n) { return Scalar(-n); };
        phase1.push_back(ch);
    }

    SingExpression out;
    int budget = budget_limit;
    detail::phase_rewrite(m, phase3, s, {}, out, budget,
        [&](const State& s3, const std::vector<OpToken>& w3) {
            detail::phase_rewrite(m, phase2, s3, w3, out, budget,
                [&](const State& s2, const std::vector<OpToken>& w2) {
                    detail::phase_rewrite(m, phase1, s2, w2, out, budget,
                        [&](const State& s1, const std::vector<OpToken>& w1) {
                            out.terms.emplace_back(w1, s1);
                        });
                });
        });
    if (out.evaluate(m) != s)
        throw std::logic_error("rewrite_to_sing: evaluation mismatch");
    return out;
}

// Membership probe for Sing: every positive frame mode up to the top weight
// kills the state.
inline bool in_sing(const VModule& m, const State& s) {
    int top = s.top_weight();
    for (auto& op : positive_mode_ops(m, std::max(top, 1)))
        if (!op(s).is_zero()) return false;
    return true;
}

// Zero-mode action of a weight-1 element on a singular vector.
inline State zhu_action(const VModule& m, const State& xi, const State& s) {
    if (!in_sing(m, s)) throw std::invalid_argument("zhu_action: input not singular");
    State out = m.conformal_mode(xi, 0, s);
    if (!in_sing(m, out)) throw std::logic_error("zhu_action: result left Sing");
    return out;
}

inline VModule induce_free(std::shared_ptr<const Chart> chart, const FreePresentation& f,
                           CentralCharacter cc) {
    return VModule(std::move(chart), std::move(cc), f);
}

// Local nilpotence probe: for each slice-basis state and positive frame
// mode, find a power <= bound that kills it.
inline Report check_half_integrable(const VModule& m, int weight_cutoff, int power_bound,
                                    int coeff_degree = 2) {
    Report rep;
    rep.command = "half_integrable";
    rep.params["weight"] = std::to_string(weight_cutoff);
    rep.params["power"] = std::to_string(power_bound);
    const Chart& c = m.chart();
    std::vector<std::pair<std::string, std::function<State(const State&)>>> ops;
    for (int n = 1; n <= weight_cutoff + 1; ++n) {
        for (std::size_t i = 0; i < c.tau.size(); ++i) {
            ops.emplace_back("tau" + std::to_string(i + 1) + "_" + std::to_string(n),
                             [&m, &c, i, n](const State& x) {
                                 return m.conformal_mode(c.tau[i], n, x);
                             });
            ops.emplace_back("omega" + std::to_string(i + 1) + "_" + std::to_string(n),
                             [&m, &c, i, n](const State& x) {
                                 return m.conformal_mode(c.omega[i], n, x);
                             });
        }
        for (int r = 1; r <= m.n_nondeg(); ++r)
            ops.emplace_back("h" + std::to_string(r) + "_" + std::to_string(n),
                             [&m, r, n](const State& x) { return m.heis_mode(r, n, x); });
    }
    bool all = true;
    std::string witness;
    for (int w = 0; w <= weight_cutoff; ++w)
        for (const auto& mono : module_slice_basis(m, w).monos)
            for (const auto& cm : coeff_monomials(m.table(), coeff_degree)) {
                State s;
                s.add(mono, RingElement::monomial(cm, Scalar(1)));
                for (const auto& [name, op] : ops) {
                    State cur = s;
                    int p = 0;
                    while (!cur.is_zero() && p < power_bound) {
                        cur = op(cur);
                        ++p;
                    }
                    if (!cur.is_zero() && witness.empty()) {
                        all = false;
                        witness = name + " unresolved on " + s.str();
                    }
                }
            }
    rep.check("local nilpotence", all, witness);
    return rep;
}

// Sing(induce(F)) recovers F: weight-0 slice matches the presentation rank,
// higher kernels vanish, and the zero-mode action of the frame reproduces
// the connection.
inline Report roundtrip_check(std::shared_ptr<const Chart> chart, const FreePresentation& f,
                              const CentralCharacter& cc, int weight_cutoff,
                              int degree_cutoff) {
    Report rep;
    rep.command = "roundtrip";
    rep.params["rank"] = std::to_string(f.rank);
    rep.params["weight"] = std::to_string(weight_cutoff);
    rep.params["degree"] = std::to_string(degree_cutoff);
    VModule m = induce_free(chart, f, cc);
    SingBasis sb = sing(m, weight_cutoff, degree_cutoff);

    bool w0_ok = static_cast<int>(sb.kernel_states[0].size()) == f.rank;
    rep.check("Sing weight-0 rank", w0_ok,
              w0_ok ? "" : std::to_string(sb.kernel_states[0].size()));
    bool higher_ok = true;
    std::string witness;
    for (const auto& [w, states] : sb.kernel_states)
        if (w > 0 && !states.empty() && witness.empty()) {
            higher_ok = false;
            witness = "weight " + std::to_string(w) + ": " + states.front().str();
        }
    rep.check("higher singular vectors vanish", higher_ok, witness);

    // Frame action on the recovered weight-0 slice vs the presentation.
    const Chart& c = m.chart();
    const GeneratorTable& t = m.table();
    bool act_ok = true;
    std::string actw;
    for (int comp = 0; comp < f.rank; ++comp)
        for (const auto& cm : coeff_monomials(t, degree_cutoff)) {
            State s = m.component_vacuum(comp, RingElement::monomial(cm, Scalar(1)));
            for (int i = 1; i <= t.N; ++i) {
                State got = zhu_action(m, c.tau[static_cast<std::size_t>(i - 1)], s);
                State expect =
                    m.component_vacuum(comp, RingElement::monomial(cm, Scalar(1))
                                                 .derivative(t.var(i)));
                if (!f.conn.empty())
                    for (int r = 0; r < f.rank; ++r)
                        expect += m.component_vacuum(
                            r, f.conn[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(r)]
                                     [static_cast<std::size_t>(comp)] *
                                   RingElement::monomial(cm, Scalar(1)));
                if (got != expect && actw.empty()) {
                    act_ok = false;
                    actw = "tau" + std::to_string(i) + " on " + s.str();
                }
            }
            for (int k = 1; k <= t.H; ++k) {
                State got = zhu_action(m, c.hgen[static_cast<std::size_t>(k - 1)], s);
                State expect = cc.theta[static_cast<std::size_t>(k - 1)] * s;
                if (got != expect && actw.empty()) {
                    act_ok = false;
                    actw = "h" + std::to_string(k) + " on " + s.str();
                }
            }
        }
    rep.check("zero-mode action matches the presentation", act_ok, actw);
    return rep;
}

}  // namespace vxcalc
