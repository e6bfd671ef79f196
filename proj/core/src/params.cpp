#include "xsuperint/params.hpp"

#include "xsuperint/errors.hpp"

#include <cmath>
#include <numeric>

namespace xsuperint {

Rational param_b(const Rational& alpha, const Rational& beta) {
    if (alpha == beta) throw EqualParametersError();
    return (beta + alpha) / (beta - alpha);
}

Params::Params(Rational alpha, Rational beta, double omega, int p, int q)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), omega_(omega), p_(p), q_(q) {
    if (alpha_ == beta_) throw EqualParametersError();
    if (!(alpha_ > Rational(0)) || !(beta_ > alpha_))
        throw DomainError("parameters must satisfy beta > alpha > 0 (got alpha=" + alpha_.to_string() +
                          ", beta=" + beta_.to_string() + ")");
    if (!(omega_ > 0.0) || !std::isfinite(omega_)) throw DomainError("omega must be positive and finite");
    if (p_ <= 0 || q_ <= 0) throw DomainError("k = p/q needs positive p and q");
    if (std::gcd(p_, q_) != 1) throw DomainError("k = p/q needs coprime p and q");
    b_ = param_b(alpha_, beta_);
}

Rational Params::A(const Rational& n) const { return Rational(2) * n - Rational(1) + alpha_ + beta_; }

}  // namespace xsuperint
