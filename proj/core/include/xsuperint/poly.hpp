#pragma once

#include "xsuperint/rational.hpp"

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace xsuperint {

/// Dense univariate polynomial over the rationals. coeffs()[i] multiplies
/// x^i; no trailing zero is ever stored, so the zero polynomial has no
/// coefficients and degree -1.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);  // NOLINT(google-explicit-constructor): constants are polynomials
    Poly(int c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

    static Poly x();
    static Poly monomial(int power, const Rational& c = Rational(1));
    /// (x - root)
    static Poly linear_factor(const Rational& root);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    /// Coefficient of x^i, zero past the degree.
    Rational coeff(int i) const;
    Rational leading() const;

    Poly derivative() const;
    Poly monic() const;
    Rational eval(const Rational& x) const;
    double eval(double x) const;
    /// p(scale * x + shift)
    Poly substitute_affine(const Rational& scale, const Rational& shift) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    /// Monic greatest common divisor; gcd(0, 0) = 0.
    static Poly gcd(Poly a, Poly b);

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

Poly pow(const Poly& p, int exponent);

/// True when a = c*b for some nonzero rational c; returns c through *ratio.
bool proportional(const Poly& a, const Poly& b, Rational* ratio = nullptr);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace xsuperint
