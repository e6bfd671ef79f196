#include "xsuperint/diffop.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace xsuperint {

namespace {

Rational binomial(int n, int k) {
    Rational r(1);
    for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
    return r;
}

}  // namespace

DiffOp::DiffOp(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

DiffOp DiffOp::identity() { return DiffOp({RatFunc(1)}); }

DiffOp DiffOp::derivative() { return DiffOp({RatFunc(0), RatFunc(1)}); }

DiffOp DiffOp::multiply(const RatFunc& f) { return DiffOp({f}); }

void DiffOp::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RatFunc DiffOp::coeff(int j) const {
    if (j < 0 || j > order()) return RatFunc(0);
    return coeffs_[static_cast<std::size_t>(j)];
}

RatFunc DiffOp::apply(const RatFunc& f) const {
    RatFunc out(0);
    RatFunc dj = f;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (!coeffs_[j].is_zero()) out += coeffs_[j] * dj;
        if (j + 1 < coeffs_.size()) dj = dj.derivative();
    }
    return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    trim();
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    trim();
    return *this;
}

DiffOp& DiffOp::operator*=(const RatFunc& f) {
    for (auto& c : coeffs_) c *= f;
    trim();
    return *this;
}

std::string DiffOp::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = order(); j >= 0; --j) {
        const RatFunc& c = coeffs_[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "[" << c.to_string(var) << "]";
        if (j == 1) os << "*d";
        if (j > 1) os << "*d^" << j;
    }
    return os.str();
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const int oa = a.order(), ob = b.order();
    std::vector<RatFunc> out(static_cast<std::size_t>(oa + ob + 1));
    for (int j = 0; j <= ob; ++j) {
        // derivatives of b_j up to order oa
        std::vector<RatFunc> d{b.coeff(j)};
        if (d[0].is_zero()) continue;
        for (int l = 1; l <= oa; ++l) d.push_back(d.back().derivative());
        for (int i = 0; i <= oa; ++i) {
            const RatFunc& ai = a.coeffs()[static_cast<std::size_t>(i)];
            if (ai.is_zero()) continue;
            // d^i o (b_j d^j) = sum_l C(i,l) b_j^(l) d^(i-l+j)
            for (int l = 0; l <= i; ++l) {
                if (d[static_cast<std::size_t>(l)].is_zero()) continue;
                out[static_cast<std::size_t>(i - l + j)] +=
                    ai * d[static_cast<std::size_t>(l)] * RatFunc(binomial(i, l));
            }
        }
    }
    return DiffOp(std::move(out));
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

GaugeLogDeriv GaugeLogDeriv::power(const Rational& root, const Rational& exponent) {
    return {RatFunc(Poly(exponent), Poly::linear_factor(root))};
}

GaugeLogDeriv GaugeLogDeriv::exponential(const Rational& rate) { return {RatFunc(rate)}; }

DiffOp gauge_conjugate(const DiffOp& a, const GaugeLogDeriv& g) {
    if (g.logderiv.is_zero()) return a;
    const DiffOp shifted = DiffOp::derivative() - DiffOp::multiply(g.logderiv);
    DiffOp power = DiffOp::identity();
    DiffOp out;
    for (int j = 0; j <= a.order(); ++j) {
        if (j > 0) power = compose(shifted, power);
        const RatFunc& c = a.coeffs()[static_cast<std::size_t>(j)];
        if (!c.is_zero()) out += c * power;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const DiffOp& op) { return os << op.to_string(); }

}  // namespace xsuperint
