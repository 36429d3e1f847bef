#pragma once

// Seeded random states for the verification suites. The generator is fully
// deterministic for a fixed seed, which the reporting layer relies on.

#include "vxcalc/fock.hpp"

#include <random>

namespace vxcalc {

class RandomStates {
public:
    RandomStates(const GeneratorTable& table, std::mt19937_64& rng)
        : table_(table), rng_(rng) {}

    // A state of weight exactly `weight` with a single random coefficient
    // monomial of degree <= max_deg on each term.
    State homogeneous(int weight, int max_deg, int n_terms = 2) {
        State s;
        for (int t = 0; t < n_terms; ++t) {
            CreationMonomial m;
            int remaining = weight;
            while (remaining > 0) {
                int n = 1 + static_cast<int>(rng_() % static_cast<unsigned>(remaining));
                m.insert(random_creation_mode(n));
                remaining -= n;
            }
            s.add(m, random_coeff(max_deg));
        }
        return s;
    }

    // A state of weight <= max_weight (possibly mixed weights).
    State state(int max_weight, int max_deg, int n_terms = 2) {
        State s;
        for (int t = 0; t < n_terms; ++t) {
            int w = static_cast<int>(rng_() % static_cast<unsigned>(max_weight + 1));
            s += homogeneous(w, max_deg, 1);
        }
        return s;
    }

    RingElement random_coeff(int max_deg) {
        Monomial m;
        for (int i = 1; i <= table_.N; ++i) {
            int e = static_cast<int>(rng_() % static_cast<unsigned>(max_deg + 1));
            if (e > 0 && mono_degree(m) + e <= max_deg) m[table_.var(i)] = e;
        }
        long c = static_cast<long>(rng_() % 7) - 3;
        if (c == 0) c = 1;
        return RingElement::monomial(m, Scalar(c));
    }

private:
    Mode random_creation_mode(int weight) {
        int kinds = table_.H > 0 ? 3 : 2;
        switch (rng_() % static_cast<unsigned>(kinds)) {
            case 0: return Mode{Gen::A, pick(table_.N), -weight};
            case 1: return Mode{Gen::B, pick(table_.N), -weight};
            default: return Mode{Gen::H, pick(table_.H), -weight};
        }
    }
    int pick(int n) { return 1 + static_cast<int>(rng_() % static_cast<unsigned>(n)); }

    const GeneratorTable& table_;
    std::mt19937_64& rng_;
};

}  // namespace vxcalc
