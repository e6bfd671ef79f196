#pragma once

#include "xsuperint/rational.hpp"

namespace xsuperint {

/// b = (beta + alpha) / (beta - alpha). Throws EqualParametersError when
/// alpha == beta.
Rational param_b(const Rational& alpha, const Rational& beta);

/// Model parameters. alpha and beta are exact so that every symbolic check
/// is an exact identity; omega only scales energies and lengths.
class Params {
public:
    /// Validates beta > alpha > 0, omega > 0, p, q > 0 and gcd(p, q) == 1.
    /// Throws EqualParametersError for alpha == beta and DomainError otherwise.
    Params(Rational alpha, Rational beta, double omega, int p, int q);

    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }
    double omega() const { return omega_; }
    int p() const { return p_; }
    int q() const { return q_; }
    Rational k() const { return Rational(p_, q_); }
    const Rational& b() const { return b_; }

    /// A_n = 2n - 1 + alpha + beta.
    Rational A(const Rational& n) const;
    /// k * A_n, the Laguerre parameter of the radial factor.
    Rational kA(const Rational& n) const { return k() * A(n); }

private:
    Rational alpha_;
    Rational beta_;
    double omega_;
    int p_;
    int q_;
    Rational b_;
};

}  // namespace xsuperint
