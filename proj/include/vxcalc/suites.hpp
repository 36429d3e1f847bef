#pragma once

// Named verification suites shared by the command-line tool and the
// acceptance harness. Every suite consumes explicit cutoffs and a seed and
// produces a deterministic Report.

#include "vxcalc/algebroid.hpp"
#include "vxcalc/charts.hpp"
#include "vxcalc/dsl.hpp"
#include "vxcalc/json_io.hpp"
#include "vxcalc/module.hpp"
#include "vxcalc/random.hpp"
#include "vxcalc/report.hpp"
#include "vxcalc/vertex.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace vxcalc {

inline int suite_threads() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("VXCALC_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

// Runs f(i) for i in [0, n) on up to suite_threads() workers; results are
// aggregated by index, so the outcome is independent of scheduling.
inline std::vector<std::string> parallel_witnesses(
    std::size_t n, const std::function<std::string(std::size_t)>& f) {
    std::vector<std::string> out(n);
    int workers = std::min<int>(suite_threads(), static_cast<int>(std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) out[i] = f(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

namespace detail {

inline void summarize(Report& rep, const std::string& name,
                      const std::vector<std::string>& witnesses) {
    std::size_t fails = 0;
    std::string first;
    for (const auto& w : witnesses)
        if (!w.empty()) {
            ++fails;
            if (first.empty()) first = w;
        }
    rep.check(name + " (" + std::to_string(witnesses.size() - fails) + "/" +
                  std::to_string(witnesses.size()) + ")",
              fails == 0, first);
}

inline std::shared_ptr<Chart> borcherds_chart() {
    std::vector<std::vector<Scalar>> gram{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    return std::make_shared<Chart>(build_chart("C2-heis", 2, gram));
}

}  // namespace detail

// Criterion chart: two beta-gamma pairs plus two constant fields with
// pairing diag(1, 0). Checks the cross identity on the algebra and on the
// trivial-character Fock module.
inline Report suite_borcherds(int samples, unsigned long seed, int max_weight = 3) {
    Report rep;
    rep.command = "borcherds";
    rep.params["samples"] = std::to_string(samples);
    rep.params["seed"] = std::to_string(seed);
    rep.params["weight"] = std::to_string(max_weight);
    auto chart = detail::borcherds_chart();
    const FockOps& ops = *chart->ops;
    CentralCharacter cc;
    cc.theta.assign(2, Scalar(0));
    VModule mod = make_module(chart, cc);

    struct Sample {
        State a, b, c_alg, c_mod;
        long m, n, k;
    };
    std::mt19937_64 rng(seed);
    RandomStates rs(chart->table(), rng);
    std::vector<State> mod_monos;
    for (int w = 0; w <= max_weight; ++w)
        for (const auto& mono : module_slice_basis(mod, w).monos) {
            State s;
            s.add(mono, RingElement(1));
            mod_monos.push_back(s);
        }
    std::vector<Sample> inputs;
    for (int i = 0; i < samples; ++i) {
        Sample s;
        s.a = rs.state(max_weight, 2);
        s.b = rs.state(max_weight, 2);
        s.c_alg = rs.state(max_weight, 2);
        for (std::size_t t = 0; t < 2; ++t)
            s.c_mod += mod_monos[rng() % mod_monos.size()].mul_coeff(rs.random_coeff(2));
        s.m = static_cast<long>(rng() % 7) - 3;
        s.n = static_cast<long>(rng() % 7) - 3;
        s.k = static_cast<long>(rng() % 7) - 3;
        inputs.push_back(std::move(s));
    }
    auto alg = parallel_witnesses(inputs.size(), [&](std::size_t i) -> std::string {
        const Sample& s = inputs[i];
        State r = check_borcherds(ops, s.a, s.b, s.c_alg, s.m, s.n, s.k);
        return r.is_zero() ? "" : "sample " + std::to_string(i) + ": residual " + r.str();
    });
    detail::summarize(rep, "algebra identity residuals vanish", alg);
    auto modres = parallel_witnesses(inputs.size(), [&](std::size_t i) -> std::string {
        const Sample& s = inputs[i];
        State r = check_borcherds(ops, mod, s.a, s.b, s.c_mod, s.m, s.n, s.k);
        return r.is_zero() ? "" : "sample " + std::to_string(i) + ": residual " + r.str();
    });
    detail::summarize(rep, "module identity residuals vanish", modres);
    return rep;
}

// Nine algebroid identities on the affine charts (N = 1, 2) and on both
// twisted projective-line charts.
inline Report suite_axioms() {
    Report rep;
    rep.command = "axioms";
    std::vector<std::pair<std::string, Chart>> charts;
    charts.emplace_back("affine N=1", build_chart("C1", 1));
    charts.emplace_back("affine N=2", build_chart("C2", 2));
    GluedPair tcdo = build_p1_tcdo();
    charts.emplace_back("P1 twisted chart 0", *tcdo.c0);
    charts.emplace_back("P1 twisted chart 1", *tcdo.c1);
    for (const auto& [label, chart] : charts) {
        OneTruncated tr = extract_truncation(chart);
        Report sub = check_algebroid_axioms(tr);
        for (const auto& c : sub.checks)
            rep.check(label + ": " + c.name, c.pass, c.witness);
    }
    return rep;
}

inline Report suite_glue(const std::string& builtin, int weight = 2, int window = 2) {
    Report rep;
    rep.command = "glue";
    rep.params["builtin"] = builtin;
    rep.params["weight"] = std::to_string(weight);
    rep.params["window"] = std::to_string(window);
    if (builtin != "p1-cdo" && builtin != "p1-tcdo")
        throw std::invalid_argument("glue: builtin must be p1-cdo or p1-tcdo");
    GluedPair g = builtin == "p1-cdo" ? build_p1_cdo() : build_p1_tcdo();
    rep.params["variant"] = g.variant_note;

    Report fwd = verify_homomorphism(g.t01, weight, window);
    rep.check("transition 0->1 is a homomorphism", fwd.ok(),
              fwd.ok() ? "" : fwd.checks.front().witness);
    Report bwd = verify_homomorphism(g.t10, weight, window);
    rep.check("transition 1->0 is a homomorphism", bwd.ok(),
              bwd.ok() ? "" : bwd.checks.front().witness);
    Report rt = verify_roundtrip(g.t01, g.t10, weight, 1);
    rep.check("cocycle roundtrip is the identity", rt.ok(),
              rt.ok() ? "" : rt.checks.front().witness);

    // Negative control: perturbing the correction term must fail.
    TransitionMap perturbed = g.t01;
    perturbed.a_images[0] += Scalar(4) * State::one_mode(Gen::B, 1, -1);
    Report pf = verify_homomorphism(perturbed, weight, window);
    rep.check("sign-perturbed correction fails", !pf.ok(),
              pf.ok() ? "perturbed map still verified" : "");

    if (builtin == "p1-tcdo") {
        // Omitting the central twist term is invisible to the homomorphism
        // checks but breaks the cocycle condition.
        TransitionMap no_twist = g.t01;
        State stripped;
        for (const auto& [mono, coeff] : no_twist.a_images[0].terms()) {
            bool has_h = false;
            for (const auto& md : mono.modes) has_h = has_h || md.kind == Gen::H;
            if (!has_h) stripped.add(mono, coeff);
        }
        no_twist.a_images[0] = stripped;
        Report nt = verify_roundtrip(no_twist, g.t10, weight, 1);
        rep.check("omitted central term breaks the roundtrip", !nt.ok(),
                  nt.ok() ? "omission not detected" : "");
    }
    return rep;
}

inline Report suite_sing(const VModule& mod, int weight, int degree,
                         const std::string& label) {
    Report rep;
    rep.command = "sing";
    rep.params["chart"] = label;
    rep.params["weight"] = std::to_string(weight);
    rep.params["degree"] = std::to_string(degree);
    SingBasis sb = sing(mod, weight, degree);
    for (const auto& [w, states] : sb.kernel_states) {
        std::string listing;
        for (const auto& s : states) {
            if (!listing.empty()) listing += "; ";
            listing += s.str();
        }
        rep.check("weight " + std::to_string(w) + " kernel rank " +
                      std::to_string(states.size()),
                  true, listing);
    }
    bool shape = static_cast<int>(sb.kernel_states[0].size()) == mod.rank();
    for (const auto& [w, states] : sb.kernel_states)
        if (w > 0) shape = shape && states.empty();
    rep.check("Sing is the weight-zero slice", shape, "");
    return rep;
}

inline Report suite_sing_builtin(const std::string& builtin, int weight, int degree) {
    if (builtin != "cn") throw std::invalid_argument("sing: builtin must be cn");
    Report rep;
    rep.command = "sing";
    rep.params["builtin"] = builtin;
    rep.params["weight"] = std::to_string(weight);
    rep.params["degree"] = std::to_string(degree);
    for (int n = 1; n <= 2; ++n) {
        auto chart = std::make_shared<Chart>(build_chart("C" + std::to_string(n), n));
        CentralCharacter cc;
        VModule mod = make_module(chart, cc);
        Report sub = suite_sing(mod, weight, degree, chart->name);
        for (const auto& c : sub.checks) rep.check(chart->name + ": " + c.name, c.pass, c.witness);
    }
    return rep;
}

// Descent rewriting plus the filtration properties that drive it, on the
// plain Fock module and on a module twisted through a central field.
inline Report suite_rewrite(int samples, unsigned long seed, int max_weight = 3) {
    Report rep;
    rep.command = "rewrite";
    rep.params["samples"] = std::to_string(samples);
    rep.params["seed"] = std::to_string(seed);
    rep.params["weight"] = std::to_string(max_weight);

    auto plain_chart = std::make_shared<Chart>(build_chart("C1", 1));
    VModule plain = make_module(plain_chart, CentralCharacter{});

    std::vector<std::vector<Scalar>> gram{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}};
    auto tw_chart = std::make_shared<Chart>(build_chart("C1-tw", 1, gram));
    CentralCharacter tw_cc;
    tw_cc.theta = {Scalar(0), Scalar(3)};
    tw_cc.chi[0] = {Scalar(3)};
    VModule twisted = make_module(tw_chart, tw_cc);

    struct Input {
        const VModule* mod;
        State s;
    };
    std::mt19937_64 rng(seed);
    std::vector<Input> inputs;
    for (const VModule* mod : {&plain, &twisted}) {
        std::vector<CreationMonomial> monos;
        for (int w = 0; w <= max_weight; ++w)
            for (const auto& mono : module_slice_basis(*mod, w).monos) monos.push_back(mono);
        RandomStates rs(mod->table(), rng);
        for (int i = 0; i < samples; ++i) {
            State s;
            std::size_t terms = 1 + rng() % 2;
            for (std::size_t t = 0; t < terms; ++t)
                s.add(monos[rng() % monos.size()], rs.random_coeff(2));
            inputs.push_back({mod, std::move(s)});
        }
    }
    auto res = parallel_witnesses(inputs.size(), [&](std::size_t i) -> std::string {
        const auto& [mod, s] = inputs[i];
        try {
            SingExpression e = rewrite_to_sing(*mod, s);
            if (e.evaluate(*mod) != s) return "sample " + std::to_string(i) + ": evaluation";
            for (const auto& [word, u] : e.terms)
                if (!in_sing(*mod, u)) return "sample " + std::to_string(i) + ": not singular";
            return "";
        } catch (const std::exception& e) {
            return "sample " + std::to_string(i) + ": " + e.what();
        }
    });
    detail::summarize(rep, "rewriting re-evaluates exactly and lands in Sing", res);

    // The operator identity behind each step, instantiated: with
    // A = omega_1(1), B = tau_1(-1) and A^{k+1} m = 0,
    // A^k (k[B,A] + BA) m = 0.
    {
        const Chart& c = *plain_chart;
        State m = plain.apply_mode(Gen::A, 1, -1,
                                   plain.apply_mode(Gen::A, 1, -1, plain.component_vacuum(0)));
        auto a_op = [&](const State& x) { return plain.conformal_mode(c.omega[0], 1, x); };
        auto b_op = [&](const State& x) { return plain.conformal_mode(c.tau[0], -1, x); };
        int k = 0;
        State p = m;
        while (!a_op(p).is_zero()) {
            p = a_op(p);
            ++k;
        }
        Scalar lam(-1);  // [B, A] on this channel at n = 1
        State inner = Scalar(k) * lam * m + b_op(a_op(m));
        State gkl = inner;
        for (int i = 0; i < k; ++i) gkl = a_op(gkl);
        rep.check("GKL identity instance vanishes", gkl.is_zero(),
                  gkl.is_zero() ? "" : gkl.str());
    }

    // Filtration: level equals top weight on homogeneous and mixed states,
    // and positive modes of degree n drop the level by at least n.
    {
        std::mt19937_64 rng2(seed + 1);
        RandomStates rs(plain_chart->table(), rng2);
        std::vector<State> states;
        for (int i = 0; i < samples / 2; ++i) {
            states.push_back(rs.homogeneous(1 + static_cast<int>(rng2() % max_weight), 2));
            states.push_back(rs.state(max_weight, 2));
        }
        bool level_ok = true, compat_ok = true;
        std::string lw, cw;
        for (const auto& s : states) {
            if (s.is_zero()) continue;
            int lvl = filtration_level(plain, s);
            if (lvl != s.top_weight() && lw.empty()) {
                level_ok = false;
                lw = s.str();
            }
            for (int n = 1; n <= 2; ++n)
                for (Gen g : {Gen::A, Gen::B}) {
                    State dropped = plain.apply_mode(g, 1, n, s);
                    if (dropped.is_zero()) continue;
                    if (filtration_level(plain, dropped) > lvl - n && cw.empty()) {
                        compat_ok = false;
                        cw = s.str();
                    }
                }
        }
        rep.check("filtration level equals top weight", level_ok, lw);
        rep.check("positive modes drop the level", compat_ok, cw);
    }
    return rep;
}

// Induction/recovery roundtrip and the rejection of characters with
// positive-mode components.
inline Report suite_roundtrip(int weight = 3, int degree = 2) {
    Report rep;
    rep.command = "roundtrip";
    rep.params["weight"] = std::to_string(weight);
    rep.params["degree"] = std::to_string(degree);

    auto plain_chart = std::make_shared<Chart>(build_chart("C1", 1));
    FreePresentation free1;
    Report r1 = roundtrip_check(plain_chart, free1, CentralCharacter{}, weight, degree);
    rep.check("untwisted rank-one roundtrip", r1.ok(),
              r1.ok() ? "" : r1.checks.front().witness);

    // One central field of square zero, character value 3.
    auto tw_chart = std::make_shared<Chart>(
        build_chart("C1-central", 1, {{Scalar(0)}}));
    CentralCharacter tw;
    tw.theta = {Scalar(3)};
    tw.chi[0] = {Scalar(3)};
    Report r2 = roundtrip_check(tw_chart, free1, tw, weight, degree);
    rep.check("twisted character roundtrip", r2.ok(), r2.ok() ? "" : r2.checks.front().witness);

    bool rejected = false;
    std::string msg;
    try {
        CentralCharacter bad = tw;
        bad.chi[1] = {Scalar(1)};
        make_module(tw_chart, bad);
    } catch (const std::invalid_argument& e) {
        rejected = true;
        msg = e.what();
    }
    rep.check("positive character component is rejected", rejected, msg);
    return rep;
}

inline Report suite_commutators(const std::string& builtin, int window = 2) {
    std::shared_ptr<const Chart> chart;
    if (builtin == "cn") {
        chart = std::make_shared<Chart>(build_chart("C2", 2));
    } else if (builtin == "p1-cdo") {
        chart = build_p1_cdo().c0;
    } else if (builtin == "p1-tcdo") {
        chart = build_p1_tcdo().c0;
    } else {
        throw std::invalid_argument("commutators: unknown builtin " + builtin);
    }
    Report rep = commutator_report(*chart, window);
    rep.params["builtin"] = builtin;
    return rep;
}

inline Report suite_eval(const std::string& text, int n_pairs = 2, int n_heis = 1) {
    Report rep;
    rep.command = "eval";
    rep.params["expr"] = text;
    std::vector<std::vector<Scalar>> gram(static_cast<std::size_t>(n_heis),
                                          std::vector<Scalar>(static_cast<std::size_t>(n_heis),
                                                              Scalar(0)));
    for (int i = 0; i < n_heis; ++i) gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(1);
    FockOps ops(GeneratorTable::make(n_pairs, n_heis, gram));
    State s = evaluate_expr(ops, parse_expr(text));
    rep.check("evaluated", true, s.str());
    return rep;
}

}  // namespace vxcalc
