#include "xsuperint/linalg.hpp"

#include "xsuperint/errors.hpp"

#include <algorithm>

namespace xsuperint {

namespace {

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row.
std::vector<std::size_t> rref(RationalMatrix& rows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Rational inv = Rational(1) / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<RationalVector> nullspace(RationalMatrix rows, std::size_t ncols) {
    for (auto& row : rows) row.resize(ncols);
    const auto pivots = rref(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(ncols);
        v[free] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

RationalVector solve(RationalMatrix m, RationalVector rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i].resize(n);
        m[i].push_back(rhs[i]);
    }
    const auto pivots = rref(m, n + 1);
    if (!pivots.empty() && pivots.back() == n) throw NoSolutionError("inconsistent linear system");
    if (pivots.size() < n) throw NonUniqueSolutionError("underdetermined linear system");
    RationalVector u(n);
    for (std::size_t i = 0; i < n; ++i) u[pivots[i]] = m[i][n];
    return u;
}

void append_identity_equations(const std::vector<RatFunc>& columns, RationalMatrix& rows) {
    Poly common(1);
    for (const auto& c : columns) {
        const Poly g = Poly::gcd(common, c.den());
        common = common * Poly::divmod(c.den(), g).first;
    }
    std::vector<Poly> numerators;
    int maxdeg = -1;
    for (const auto& c : columns) {
        numerators.push_back(c.num() * Poly::divmod(common, c.den()).first);
        maxdeg = std::max(maxdeg, numerators.back().degree());
    }
    for (int d = 0; d <= maxdeg; ++d) {
        RationalVector row(columns.size());
        bool any = false;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            row[i] = numerators[i].coeff(d);
            any = any || !row[i].is_zero();
        }
        if (any) rows.push_back(std::move(row));
    }
}

std::vector<RationalVector> linear_relations(const std::vector<RatFunc>& columns) {
    RationalMatrix rows;
    append_identity_equations(columns, rows);
    return nullspace(std::move(rows), columns.size());
}

}  // namespace xsuperint
