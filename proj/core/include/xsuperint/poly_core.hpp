#pragma once

#include "xsuperint/diffop.hpp"
#include "xsuperint/poly.hpp"
#include "xsuperint/rational.hpp"
#include "xsuperint/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xsuperint {

/// (z)_j = z (z+1) ... (z+j-1), with (z)_0 = 1.
Rational pochhammer(const Rational& z, int j);

/// Generalized binomial coefficient C(top, j) for rational top.
Rational binomial(const Rational& top, int j);

/// Classical Jacobi polynomial P_n^{(alpha,beta)}, normalized so that
/// P_n(1) = (alpha+1)_n / n!. Built from the three-term recurrence.
Poly jacobi_poly(int n, const Rational& alpha, const Rational& beta);

/// Laguerre polynomial L_m^{(a)}(y) = sum_i (-1)^i C(m+a, m-i) y^i / i!.
Poly laguerre_poly(int m, const Rational& a);

/// The printed closed form for the X1 Jacobi polynomial
///   -1/2 (x-b) P_{n-1} + [b P_{n-1} - P_{n-2}] / (2n-2+alpha+beta),
/// with P_{-1} := 0.
Poly xjacobi_printed(int n, const Rational& alpha, const Rational& beta);

/// Monic polynomial u of degree exactly n with op(u) = eigenvalue * u as an
/// exact identity. Throws NoSolutionError when no such u exists and
/// NonUniqueSolutionError when the solution space is larger than a line.
Poly eigen_polynomial(const DiffOp& op, int n, const Rational& eigenvalue);

/// Monic degree-n eigenpolynomial of build_T(alpha, beta) with eigenvalue
/// (2n-1+alpha+beta)^2. Requires n >= 1 and beta > alpha > 0.
Poly xjacobi_eigen(int n, const Rational& alpha, const Rational& beta);

/// The eigenpolynomial of xjacobi_eigen rescaled to the leading coefficient
/// of xjacobi_printed. Ladder coefficients are quoted in this basis.
Poly xjacobi_basis(int n, const Rational& alpha, const Rational& beta);

/// Unique polynomial of degree < xs.size() through the points (xs[i], ys[i]).
Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

struct ReconcileEntry {
    int n = 0;
    Poly printed;
    Poly eigen;
    Verdict verdict = Verdict::Mismatch;  // printed vs eigen, up to scale
    /// Degree-n eigenpolynomial of the printed operator, when one exists.
    std::optional<Poly> printed_operator_eigen;
    Verdict printed_operator_verdict = Verdict::Mismatch;  // printed vs printed_operator_eigen
};

struct ReconcileReport {
    std::vector<ReconcileEntry> entries;
    /// X_n := G_x * P_n-hat; stated in every report.
    std::string convention;
};

/// Compares the printed closed form against the exact eigenpolynomials of
/// both the derived and the printed T, for n = 1..nmax. Never rescales
/// silently: proportional pairs are MATCH, everything else MISMATCH.
ReconcileReport reconcile_xjacobi(int nmax, const Rational& alpha, const Rational& beta);

}  // namespace xsuperint
