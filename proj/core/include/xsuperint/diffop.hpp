#pragma once

#include "xsuperint/ratfunc.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace xsuperint {

/// Univariate differential operator sum_j c_j(x) d^j with rational-function
/// coefficients, kept in normal order (derivatives to the right) with no
/// trailing zero coefficient. The zero operator has no coefficients.
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<RatFunc> coeffs);

    static DiffOp identity();
    /// d/dx
    static DiffOp derivative();
    /// Multiplication by f.
    static DiffOp multiply(const RatFunc& f);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<RatFunc>& coeffs() const { return coeffs_; }
    RatFunc coeff(int j) const;

    RatFunc apply(const RatFunc& f) const;

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    DiffOp& operator*=(const RatFunc& f);

    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    /// Left multiplication by a function: (f*A)g = f*(A g).
    friend DiffOp operator*(const RatFunc& f, DiffOp a) { return a *= f; }
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<RatFunc> coeffs_;
};

/// A o B, Leibniz-expanded and normal ordered.
DiffOp compose(const DiffOp& a, const DiffOp& b);
/// AB - BA.
DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// A gauge factor G represented only through (log G)'. G itself may carry
/// irrational powers; its logarithmic derivative is rational.
struct GaugeLogDeriv {
    RatFunc logderiv;

    /// G = (x - root)^exponent.
    static GaugeLogDeriv power(const Rational& root, const Rational& exponent);
    /// G = exp(rate * x).
    static GaugeLogDeriv exponential(const Rational& rate);

    GaugeLogDeriv inverse() const { return {-logderiv}; }
    friend GaugeLogDeriv operator*(const GaugeLogDeriv& a, const GaugeLogDeriv& b) {
        return {a.logderiv + b.logderiv};
    }
};

/// G A G^{-1}, obtained from d -> d - (log G)'.
DiffOp gauge_conjugate(const DiffOp& a, const GaugeLogDeriv& g);

std::ostream& operator<<(std::ostream& os, const DiffOp& op);

}  // namespace xsuperint
