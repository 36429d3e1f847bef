#pragma once

// Polynomial differential forms on a coordinate chart: exterior derivative,
// contraction with coordinate vector fields, and the radial homotopy that
// produces exact potentials of closed forms.

#include "vxcalc/ring.hpp"

#include <map>
#include <ranges>
#include <stdexcept>
#include <vector>

namespace vxcalc {

// Degree-k form: strictly increasing index tuples (1-based variable numbers)
// with ring coefficients.
class KForm {
public:
    explicit KForm(int degree = 0) : degree_(degree) {}

    static KForm dx_wedge(std::vector<int> idx, const RingElement& coeff = RingElement(1)) {
        KForm f(static_cast<int>(idx.size()));
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (idx[i] <= idx[i - 1]) throw std::invalid_argument("KForm: indices not increasing");
        f.add(idx, coeff);
        return f;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<std::vector<int>, RingElement>& comps() const { return comps_; }

    const RingElement& coeff(const std::vector<int>& idx) const {
        static const RingElement zero;
        auto it = comps_.find(idx);
        return it == comps_.end() ? zero : it->second;
    }

    void add(const std::vector<int>& idx, const RingElement& c) {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("KForm: wrong component degree");
        if (c.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_[idx] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    KForm& operator+=(const KForm& o) {
        for (const auto& [i, c] : o.comps_) add(i, c);
        return *this;
    }
    friend KForm operator+(KForm a, const KForm& b) { return a += b; }
    friend KForm operator*(const Scalar& s, const KForm& f) {
        KForm r(f.degree_);
        for (const auto& [i, c] : f.comps_) r.add(i, s * c);
        return r;
    }
    KForm mul(const RingElement& g) const {
        KForm r(degree_);
        for (const auto& [i, c] : comps_) r.add(i, g * c);
        return r;
    }
    friend bool operator==(const KForm&, const KForm&) = default;

    // Exterior derivative over variables x_1..x_n named by vars.
    KForm d(const std::vector<std::string>& vars) const {
        KForm r(degree_ + 1);
        for (const auto& [idx, c] : comps_)
            for (int j = 1; j <= static_cast<int>(vars.size()); ++j) {
                RingElement dc = c.derivative(vars[static_cast<std::size_t>(j - 1)]);
                if (dc.is_zero()) continue;
                // Insert j into idx with the sign of the permutation.
                std::vector<int> nidx;
                int pos = 0;
                bool dup = false;
                for (int i : idx) {
                    if (i == j) { dup = true; break; }
                    if (i < j) ++pos;
                }
                if (dup) continue;
                nidx = idx;
                nidx.insert(nidx.begin() + pos, j);
                r.add(nidx, pos % 2 == 0 ? dc : -dc);
            }
        return r;
    }

    // Contraction with the coordinate vector field d/dx_i.
    KForm contract(int i) const {
        KForm r(degree_ - 1);
        for (const auto& [idx, c] : comps_)
            for (std::size_t p = 0; p < idx.size(); ++p) {
                if (idx[p] != i) continue;
                std::vector<int> nidx = idx;
                nidx.erase(nidx.begin() + static_cast<long>(p));
                r.add(nidx, p % 2 == 0 ? c : -c);
            }
        return r;
    }

    // Radial (Poincare) homotopy H with d H + H d = id on positive-degree
    // polynomial forms; for closed f of degree >= 1, d(H f) = f.
    KForm homotopy(const std::vector<std::string>& vars) const {
        if (degree_ < 1) throw std::invalid_argument("homotopy: degree must be >= 1");
        KForm r(degree_ - 1);
        for (const auto& [idx, c] : comps_)
            for (const auto& [mono, sc] : c.terms()) {
                int total = mono_degree(mono);
                for (int e : std::views::values(mono))
                    if (e < 0) throw std::invalid_argument("homotopy: Laurent coefficient");
                Scalar denom(total + degree_);
                for (std::size_t p = 0; p < idx.size(); ++p) {
                    std::vector<int> nidx = idx;
                    nidx.erase(nidx.begin() + static_cast<long>(p));
                    RingElement term =
                        RingElement::variable(vars[static_cast<std::size_t>(idx[p] - 1)]) *
                        RingElement::monomial(mono, sc / denom);
                    r.add(nidx, p % 2 == 0 ? term : -term);
                }
            }
        return r;
    }

    std::string str(const std::vector<std::string>& vars) const {
        if (comps_.empty()) return "0";
        std::string out;
        for (const auto& [idx, c] : comps_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (int i : idx) out += " dx_" + vars[static_cast<std::size_t>(i - 1)];
        }
        return out;
    }

private:
    int degree_;
    std::map<std::vector<int>, RingElement> comps_;
};

}  // namespace vxcalc
