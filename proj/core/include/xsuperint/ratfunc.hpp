#pragma once

#include "xsuperint/poly.hpp"

#include <iosfwd>
#include <string>

namespace xsuperint {

/// Reduced quotient num/den of polynomials. The denominator is monic and
/// coprime to the numerator after every operation, so equality is structural.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const Rational& c) : RatFunc(Poly(c)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(int c) : RatFunc(Poly(c)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }

    RatFunc derivative() const;
    Rational eval(const Rational& x) const;
    double eval(double x) const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);

    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();
    Poly num_;
    Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace xsuperint
