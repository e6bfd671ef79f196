#pragma once

#include "xsuperint/diffop.hpp"
#include "xsuperint/rational.hpp"

namespace xsuperint {

// Angular picture: x = cos(2 k phi), so -(1/k^2) d^2/dphi^2 becomes
// 4(x^2-1) d^2/dx^2 + 4x d/dx and the wedge 0 < phi < pi/(2k) maps onto
// -1 < x < 1.

/// The angular operator -(1/k^2) d_phi^2 + V(x) written in x, with
///   V = 2(alpha^2-1/4)/(1-x) + 2(beta^2-1/4)/(1+x) + 8(1-bx)/(b-x)^2.
/// Its gauge transform by G_x has polynomial eigenfunctions.
DiffOp angular_hamiltonian(const Rational& alpha, const Rational& beta);

/// Same operator with the rational term as printed, 4(1+bx)/(b+x)^2. The
/// double pole carries irrational local exponents, so this operator has no
/// eigenfunctions of the form G * polynomial.
DiffOp angular_hamiltonian_printed(const Rational& alpha, const Rational& beta);

/// The rational part V(x) of angular_hamiltonian.
RatFunc angular_potential(const Rational& alpha, const Rational& beta);
RatFunc angular_potential_printed(const Rational& alpha, const Rational& beta);

/// G_x = (1-x)^(alpha/2+1/4) (1+x)^(beta/2+1/4) / (x-b).
GaugeLogDeriv angular_gauge(const Rational& alpha, const Rational& beta);

/// T^{alpha,beta} = G_x^{-1} H_ang G_x, derived by exact gauge conjugation.
/// Closed form:
///   4(x^2-1) d^2 + 4[(alpha+beta+2)x + alpha-beta - 2(x^2-1)/(x-b)] d
///   + 4(beta-alpha)(1-bx)/(x-b) + (alpha+beta+1)^2,
/// eigenvalue (2n-1+alpha+beta)^2 on the degree-n X1 polynomial.
DiffOp build_T(const Rational& alpha, const Rational& beta);

/// Literal transcription of the printed operator
///   4(x^2-1) d^2 + [4(beta-alpha)(1-bx)/(b-x)] ((x+b) d - 1) + (alpha+beta+1)^2.
DiffOp build_T_printed(const Rational& alpha, const Rational& beta);

// Radial picture: y = omega r^2. Energies enter as eps = E/omega.

/// -2y d^2 - 2 d + y/2 + nu^2/(2y): the radial operator whose eigenvalue on
/// R(r) is E/omega, for centrifugal parameter nu = kA.
DiffOp radial_hamiltonian(const Rational& nu);

/// G_y = y^(nu/2) e^(-y/2).
GaugeLogDeriv radial_gauge(const Rational& nu);

}  // namespace xsuperint
