#include "xsuperint/poly_core.hpp"

#include "xsuperint/errors.hpp"
#include "xsuperint/linalg.hpp"
#include "xsuperint/operators.hpp"
#include "xsuperint/params.hpp"

namespace xsuperint {

Rational pochhammer(const Rational& z, int j) {
    if (j < 0) throw DomainError("pochhammer: negative length");
    Rational r(1);
    for (int i = 0; i < j; ++i) r *= z + Rational(i);
    return r;
}

Rational binomial(const Rational& top, int j) {
    if (j < 0) return Rational(0);
    Rational r(1);
    for (int i = 0; i < j; ++i) r = r * (top - Rational(i)) / Rational(i + 1);
    return r;
}

Poly jacobi_poly(int n, const Rational& alpha, const Rational& beta) {
    if (n < 0) throw DomainError("jacobi_poly: negative degree");
    const Poly x = Poly::x();
    Poly prev(1);
    if (n == 0) return prev;
    const Rational ab = alpha + beta;
    Poly cur = Poly(alpha + Rational(1)) + (ab + Rational(2)) / Rational(2) * (x - Poly(1));
    for (int k = 2; k <= n; ++k) {
        const Rational kk(k);
        const Rational s = Rational(2) * kk + ab;  // 2k + alpha + beta
        const Rational lhs = Rational(2) * kk * (kk + ab) * (s - Rational(2));
        if (lhs.is_zero()) throw DomainError("jacobi_poly: recurrence degenerates at these parameters");
        const Poly a1 = (s - Rational(1)) * (s * (s - Rational(2)) * x + Poly(alpha * alpha - beta * beta));
        const Rational a2 = Rational(2) * (kk + alpha - Rational(1)) * (kk + beta - Rational(1)) * s;
        Poly next = (a1 * cur - a2 * prev) * (Rational(1) / lhs);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Poly laguerre_poly(int m, const Rational& a) {
    if (m < 0) throw DomainError("laguerre_poly: negative degree");
    std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
    Rational factorial(1);
    for (int i = 0; i <= m; ++i) {
        if (i > 0) factorial *= Rational(i);
        const Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
        c[static_cast<std::size_t>(i)] = sign * binomial(Rational(m) + a, m - i) / factorial;
    }
    return Poly(std::move(c));
}

Poly xjacobi_printed(int n, const Rational& alpha, const Rational& beta) {
    if (n < 1) throw DomainError("xjacobi_printed: n >= 1 required");
    const Rational b = param_b(alpha, beta);
    const Poly x = Poly::x();
    const Poly p1 = jacobi_poly(n - 1, alpha, beta);
    const Poly p2 = n >= 2 ? jacobi_poly(n - 2, alpha, beta) : Poly();
    const Rational denom = Rational(2 * n - 2) + alpha + beta;
    if (denom.is_zero()) throw DomainError("xjacobi_printed: 2n-2+alpha+beta vanishes");
    return Rational(-1, 2) * (x - Poly(b)) * p1 + (Rational(1) / denom) * (b * p1 - p2);
}

Poly eigen_polynomial(const DiffOp& op, int n, const Rational& eigenvalue) {
    if (n < 0) throw DomainError("eigen_polynomial: negative degree");
    const DiffOp shifted = op - DiffOp::multiply(RatFunc(eigenvalue));
    std::vector<RatFunc> columns;
    for (int i = 0; i <= n; ++i) columns.push_back(shifted.apply(RatFunc(Poly::monomial(i))));
    const auto basis = linear_relations(columns);
    if (basis.empty())
        throw NoSolutionError("no polynomial of degree <= " + std::to_string(n) + " with eigenvalue " +
                              eigenvalue.to_string());
    if (basis.size() > 1)
        throw NonUniqueSolutionError("eigenspace of dimension " + std::to_string(basis.size()) + " at eigenvalue " +
                                     eigenvalue.to_string());
    Poly u(basis.front());
    if (u.degree() != n)
        throw NoSolutionError("eigenvalue " + eigenvalue.to_string() + " has no eigenpolynomial of degree " +
                              std::to_string(n));
    return u.monic();
}

Poly xjacobi_eigen(int n, const Rational& alpha, const Rational& beta) {
    if (n < 1) throw DomainError("xjacobi_eigen: the X1 family starts at degree 1");
    if (alpha == beta) throw EqualParametersError();
    if (!(alpha > Rational(0)) || !(beta > alpha)) throw DomainError("xjacobi_eigen: beta > alpha > 0 required");
    const Rational a = Rational(2 * n - 1) + alpha + beta;
    return eigen_polynomial(build_T(alpha, beta), n, a * a);
}

Poly xjacobi_basis(int n, const Rational& alpha, const Rational& beta) {
    return xjacobi_printed(n, alpha, beta).leading() * xjacobi_eigen(n, alpha, beta);
}

Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw DomainError("interpolate: need matching, non-empty samples");
    // Newton divided differences.
    std::vector<Rational> c = ys;
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            const Rational dx = xs[i] - xs[i - j];
            if (dx.is_zero()) throw DomainError("interpolate: repeated abscissa");
            c[i] = (c[i] - c[i - 1]) / dx;
        }
    Poly result(c[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) result = result * Poly::linear_factor(xs[i]) + Poly(c[i]);
    return result;
}

ReconcileReport reconcile_xjacobi(int nmax, const Rational& alpha, const Rational& beta) {
    if (nmax < 1) throw DomainError("reconcile_xjacobi: nmax >= 1 required");
    ReconcileReport report;
    report.convention = "X_n := G_x * P_n-hat (gauged polynomial); Phi(phi) = X_n(cos 2k phi)";
    const DiffOp printed_T = build_T_printed(alpha, beta);
    for (int n = 1; n <= nmax; ++n) {
        ReconcileEntry e;
        e.n = n;
        e.printed = xjacobi_printed(n, alpha, beta);
        e.eigen = xjacobi_eigen(n, alpha, beta);
        e.verdict = proportional(e.printed, e.eigen) ? Verdict::Match : Verdict::Mismatch;
        const Rational a = Rational(2 * n - 1) + alpha + beta;
        try {
            e.printed_operator_eigen = eigen_polynomial(printed_T, n, a * a);
            e.printed_operator_verdict =
                proportional(e.printed, *e.printed_operator_eigen) ? Verdict::Match : Verdict::Mismatch;
        } catch (const NoSolutionError&) {
            e.printed_operator_verdict = Verdict::Mismatch;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace xsuperint
