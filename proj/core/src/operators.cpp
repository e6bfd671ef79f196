#include "xsuperint/operators.hpp"

#include "xsuperint/params.hpp"

namespace xsuperint {

namespace {

const Rational kQuarter(1, 4);

DiffOp angular_kinetic() {
    const Poly x = Poly::x();
    return DiffOp({RatFunc(0), RatFunc(Rational(4) * x), RatFunc(Rational(4) * (x * x - Poly(1)))});
}

RatFunc pt_part(const Rational& alpha, const Rational& beta) {
    const Poly x = Poly::x();
    return RatFunc(Poly(Rational(2) * (alpha * alpha - kQuarter)), Poly(1) - x) +
           RatFunc(Poly(Rational(2) * (beta * beta - kQuarter)), Poly(1) + x);
}

}  // namespace

RatFunc angular_potential(const Rational& alpha, const Rational& beta) {
    const Rational b = param_b(alpha, beta);
    const Poly x = Poly::x();
    const Poly shifted = Poly(b) - x;
    return pt_part(alpha, beta) + RatFunc(Rational(8) * (Poly(1) - b * x), shifted * shifted);
}

RatFunc angular_potential_printed(const Rational& alpha, const Rational& beta) {
    const Rational b = param_b(alpha, beta);
    const Poly x = Poly::x();
    const Poly shifted = Poly(b) + x;
    return pt_part(alpha, beta) + RatFunc(Rational(4) * (Poly(1) + b * x), shifted * shifted);
}

DiffOp angular_hamiltonian(const Rational& alpha, const Rational& beta) {
    return angular_kinetic() + DiffOp::multiply(angular_potential(alpha, beta));
}

DiffOp angular_hamiltonian_printed(const Rational& alpha, const Rational& beta) {
    return angular_kinetic() + DiffOp::multiply(angular_potential_printed(alpha, beta));
}

GaugeLogDeriv angular_gauge(const Rational& alpha, const Rational& beta) {
    const Rational b = param_b(alpha, beta);
    return GaugeLogDeriv::power(Rational(1), alpha / Rational(2) + kQuarter) *
           GaugeLogDeriv::power(Rational(-1), beta / Rational(2) + kQuarter) *
           GaugeLogDeriv::power(b, Rational(-1));
}

DiffOp build_T(const Rational& alpha, const Rational& beta) {
    return gauge_conjugate(angular_hamiltonian(alpha, beta), angular_gauge(alpha, beta).inverse());
}

DiffOp build_T_printed(const Rational& alpha, const Rational& beta) {
    const Rational b = param_b(alpha, beta);
    const Poly x = Poly::x();
    const RatFunc rational_part(Rational(4) * (beta - alpha) * (Poly(1) - b * x), Poly(b) - x);
    const DiffOp inner({RatFunc(-1), RatFunc(x + Poly(b))});
    const Rational c = alpha + beta + Rational(1);
    return DiffOp({RatFunc(0), RatFunc(0), RatFunc(Rational(4) * (x * x - Poly(1)))}) + rational_part * inner +
           DiffOp::multiply(RatFunc(c * c));
}

DiffOp radial_hamiltonian(const Rational& nu) {
    const Poly y = Poly::x();
    const RatFunc potential = RatFunc(Rational(1, 2) * y) + RatFunc(Poly(nu * nu / Rational(2)), y);
    return DiffOp({potential, RatFunc(-2), RatFunc(Rational(-2) * y)});
}

GaugeLogDeriv radial_gauge(const Rational& nu) {
    return GaugeLogDeriv::power(Rational(0), nu / Rational(2)) * GaugeLogDeriv::exponential(Rational(-1, 2));
}

}  // namespace xsuperint
