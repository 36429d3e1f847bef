#pragma once

// Exact rational scalars. Everything in the engine is computed over Q,
// so equality checks are decidable and all tolerances are zero.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace vxcalc {

using BigInt = boost::multiprecision::cpp_int;

class Scalar {
public:
    Scalar() : value_(0) {}
    Scalar(long n) : value_(n) {}
    Scalar(const BigInt& n) : value_(n) {}
    Scalar(const BigInt& num, const BigInt& den) : value_(num, den) {
        if (den == 0) throw std::domain_error("Scalar: zero denominator");
    }

    // Parses "p", "-p" or "p/q".
    static Scalar parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Scalar(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::domain_error("Scalar: zero denominator in \"" + text + "\"");
        return Scalar(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return denominator() == 1; }

    Scalar operator-() const { return Scalar(Rational(-value_)); }
    Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
    Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
    Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.value_ != b.value_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.value_ < b.value_; }

    std::string str() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

private:
    using Rational = boost::multiprecision::cpp_rational;
    explicit Scalar(const Rational& v) : value_(v) {}
    Rational value_;
};

// Generalized binomial coefficient C(m, j), m any integer, j >= 0.
inline Scalar binomial(long m, long j) {
    if (j < 0) return Scalar(0);
    BigInt num = 1, den = 1;
    for (long i = 0; i < j; ++i) {
        num *= BigInt(m - i);
        den *= BigInt(i + 1);
    }
    return Scalar(num, den);
}

}  // namespace vxcalc
