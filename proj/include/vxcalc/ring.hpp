#pragma once

// Sparse multivariate Laurent polynomials over Scalar.
//
// A RingElement is a pure exponent-vector -> coefficient map; whether a
// variable is allowed a negative exponent is a property of the Ring
// descriptor a chart carries, checked at chart boundaries.

#include "vxcalc/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vxcalc {

// Sorted variable name -> exponent, no zero exponents.
using Monomial = std::map<std::string, int>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (const auto& [v, e] : b) {
        int ne = (r.count(v) ? r[v] : 0) + e;
        if (ne == 0) r.erase(v); else r[v] = ne;
    }
    return r;
}

inline int mono_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

class RingElement {
public:
    RingElement() = default;
    RingElement(const Scalar& c) { if (!c.is_zero()) terms_[Monomial{}] = c; }
    RingElement(long c) : RingElement(Scalar(c)) {}

    static RingElement variable(const std::string& name, int exponent = 1) {
        RingElement r;
        if (exponent == 0) return RingElement(Scalar(1));
        r.terms_[Monomial{{name, exponent}}] = Scalar(1);
        return r;
    }
    static RingElement monomial(const Monomial& m, const Scalar& c) {
        RingElement r;
        if (!c.is_zero()) r.terms_[m] = c;
        return r;
    }

    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Scalar constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    // Total degree; 0 for the zero element.
    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }
    int degree_in(const std::string& var) const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            auto it = m.find(var);
            if (it != m.end()) d = std::max(d, it->second);
        }
        return d;
    }
    int min_exponent(const std::string& var) const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            auto it = m.find(var);
            d = std::min(d, it == m.end() ? 0 : it->second);
        }
        return d;
    }

    RingElement& operator+=(const RingElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    RingElement& operator-=(const RingElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    RingElement operator-() const {
        RingElement r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    RingElement& operator*=(const RingElement& o) { *this = *this * o; return *this; }

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        RingElement r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    friend RingElement operator*(const Scalar& s, const RingElement& a) {
        return RingElement(s) * a;
    }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }
    friend bool operator<(const RingElement& a, const RingElement& b) {
        return a.terms_ < b.terms_;
    }

    RingElement derivative(const std::string& var) const {
        RingElement r;
        for (const auto& [m, c] : terms_) {
            auto it = m.find(var);
            if (it == m.end()) continue;
            Monomial dm = m;
            int e = it->second;
            if (e == 1) dm.erase(var); else dm[var] = e - 1;
            r.add_term(dm, Scalar(e) * c);
        }
        return r;
    }

    void add_term(const Monomial& m, const Scalar& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string t;
            bool coeff_one = c.is_one() && !m.empty();
            bool coeff_minus_one = (-c).is_one() && !m.empty();
            if (!coeff_one && !coeff_minus_one) t += c.str();
            if (coeff_minus_one) t += "-";
            bool star = !t.empty() && t.back() != '-';
            for (const auto& [v, e] : m) {
                if (star) t += "*";
                t += v;
                if (e != 1) t += "^" + std::to_string(e);
                star = true;
            }
            if (!first && t[0] != '-') out += "+";
            out += t;
            first = false;
        }
        return out;
    }

private:
    std::map<Monomial, Scalar> terms_;
};

// Variable set with a Laurent flag per variable. Charts own one of these;
// membership of a RingElement is checked at chart boundaries.
struct Ring {
    std::map<std::string, bool> vars;  // name -> may have negative exponents

    bool contains(const RingElement& e) const {
        for (const auto& [m, c] : e.terms())
            for (const auto& [v, exp] : m) {
                auto it = vars.find(v);
                if (it == vars.end()) return false;
                if (exp < 0 && !it->second) return false;
            }
        return true;
    }
    void check(const RingElement& e) const {
        if (!contains(e)) throw std::domain_error("not a polynomial in target chart");
    }
};

// Substitution var -> image. Negative powers of a substituted variable require
// the image to be a unit (a single Laurent monomial); otherwise this throws.
inline RingElement substitute(const RingElement& e,
                              const std::map<std::string, RingElement>& images) {
    RingElement result;
    for (const auto& [m, c] : e.terms()) {
        RingElement term(c);
        for (const auto& [v, exp] : m) {
            auto it = images.find(v);
            if (it == images.end()) {
                term *= RingElement::variable(v, exp);
                continue;
            }
            const RingElement& img = it->second;
            int n = exp;
            RingElement base = img;
            if (n < 0) {
                if (img.terms().size() != 1)
                    throw std::domain_error("substitute: inverting a non-unit image");
                const auto& [im, ic] = *img.terms().begin();
                Monomial inv;
                for (const auto& [vv, ee] : im) inv[vv] = -ee;
                base = RingElement::monomial(inv, Scalar(1) / ic);
                n = -n;
            }
            for (int i = 0; i < n; ++i) term *= base;
        }
        result += term;
    }
    return result;
}

// Substitution with a target ring check; the error message is part of the
// ring_ops contract.
inline RingElement substitute(const RingElement& e,
                              const std::map<std::string, RingElement>& images,
                              const Ring& target) {
    RingElement r = substitute(e, images);
    target.check(r);
    return r;
}

}  // namespace vxcalc
