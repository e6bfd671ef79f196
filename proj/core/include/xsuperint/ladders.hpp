#pragma once

#include "xsuperint/diffop.hpp"
#include "xsuperint/params.hpp"
#include "xsuperint/rational.hpp"
#include "xsuperint/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xsuperint {

enum class Direction { Plus, Minus };

struct QuantumState {
    int m = 0;  // radial index, m >= 0
    int n = 1;  // angular index, n >= 1
    friend bool operator==(const QuantumState&, const QuantumState&) = default;
};

/// E_{m,n} / omega = 2m + k(2n-1+alpha+beta) + 1, exact.
Rational energy_over_omega(const QuantumState& s, const Params& params);

struct LadderAction {
    QuantumState source;
    QuantumState target;
    Rational coefficient;
    Rational source_energy;  // E / omega
    Rational target_energy;  // E / omega
};

/// A differential operator whose coefficients are polynomial in the scaled
/// energy eps = E/omega: sum_i eps^i * terms[i].
class EnergyOp {
public:
    EnergyOp() = default;
    explicit EnergyOp(std::vector<DiffOp> terms);

    const std::vector<DiffOp>& terms() const { return terms_; }
    DiffOp at(const Rational& eps) const;

    friend EnergyOp compose(const EnergyOp& a, const EnergyOp& b);
    friend EnergyOp gauge_conjugate(const EnergyOp& a, const GaugeLogDeriv& g);
    friend bool operator==(const EnergyOp& a, const EnergyOp& b) { return a.terms_ == b.terms_; }

    std::string to_string(const std::string& var = "y") const;

private:
    void trim();
    std::vector<DiffOp> terms_;
};

/// Outcome of checking a printed operator against exact basis actions.
struct OperatorReport {
    std::string name;
    DiffOp derived;
    std::optional<DiffOp> printed;  // absent when the printed form cannot be built
    Verdict printed_verdict = Verdict::Mismatch;
    std::string detail;
};

/// c with a = c * b, when it exists. b == 0 requires a == 0 and yields 0.
std::optional<Rational> proportionality(const RatFunc& a, const RatFunc& b);

// Classical Jacobi ladders on P_n^{(a,c)}. The index is rational so that the
// operators can be continued to n -> -n-a-c-1 as a formal substitution.

/// Lowering operator from the structure relation; maps P_n to (n+a)(n+c) P_{n-1}.
DiffOp jacobi_lowering_derived(const Rational& n, const Rational& a, const Rational& c);
/// Raising operator; maps P_n to (n+1)(n+a+c+1) P_{n+1}.
DiffOp jacobi_raising_derived(const Rational& n, const Rational& a, const Rational& c);
DiffOp jacobi_lowering_printed(const Rational& n, const Rational& a, const Rational& c);
DiffOp jacobi_raising_printed(const Rational& n, const Rational& a, const Rational& c);

/// The verified lowering operator at integer n >= 1: the printed form when it
/// maps P_n to a multiple of P_{n-1}, the derived form otherwise. Throws
/// VerificationError if neither does.
OperatorReport build_jacobi_lowering(int n, const Rational& alpha, const Rational& beta);
OperatorReport build_jacobi_raising(int n, const Rational& alpha, const Rational& beta);

/// Forward operator, derived from F P_n^{(alpha+1,beta-1)} ~ P-hat_{n+1}
/// with the ansatz a(x) d + c(x), deg a, deg c <= 2, normalized to the
/// printed leading factor (x-1)(x-b). The printed form contains an undefined
/// symbol, so its verdict is UNRESOLVABLE.
OperatorReport build_forward_F(const Rational& alpha, const Rational& beta);

/// Backward operator, derived from B P-hat_{n+1} ~ P_n^{(alpha+1,beta-1)}
/// with the ansatz [(p0 + p1 x) d + s0] / (x - b), normalized to p1 = 1.
OperatorReport build_backward_B(const Rational& alpha, const Rational& beta);
DiffOp backward_B_printed(const Rational& alpha, const Rational& beta);

/// F o (ladder)_{n-1}^{(alpha+1,beta-1)} o B at a formal (rational) index,
/// acting on the polynomials P-hat. Gauged with G_x when requested.
DiffOp j_operator(Direction dir, const Rational& n, const Rational& alpha, const Rational& beta, bool gauged);

/// Gauged J_{+,n} or J_{-,n} at integer n. J_- at n = 1 leaves the family
/// and throws OutOfFamilyError.
DiffOp build_J(Direction dir, int n, const Rational& alpha, const Rational& beta);

/// J^q_{+,n} = J_{+,n+q-1} o ... o J_{+,n} (and the lowering analogue).
DiffOp compose_J_q(Direction dir, const Rational& n, int q, const Rational& alpha, const Rational& beta,
                   bool gauged);

/// Exact action of J^q on the basis element at n, in the xjacobi_basis
/// normalization. Throws OutOfFamilyError when the target index is < 1.
LadderAction j_action(Direction dir, int n, int q, const Rational& alpha, const Rational& beta);

/// Radial ladder K_{s} for s = +nu (Plus) or s = -nu (Minus), derived from the
/// ansatz (a0 + a1 y) d + d0 + d1 eps + c1/y + c2 y by exact action on
/// Y_m^nu, m = 0, 1, 2, at eps = 2m + nu + 1, and verified for m <= 6.
/// Resulting form: (1+s) d + eps/2 - s(1+s)/(2y).
EnergyOp build_K(Direction dir, const Rational& nu);
/// [(1 +- nu) d - eps/4 -+ (nu/(2y))(1+nu)], transcribed.
EnergyOp build_K_printed(Direction dir, const Rational& nu);

/// K^p with the parameter shifted by +-2 between factors and eps held fixed.
EnergyOp compose_K_p(Direction dir, const Rational& nu, int p);

/// Exact action of K^p on Y_m^nu at eps = 2m + nu + 1. For Plus with p > m the
/// image vanishes and the coefficient is 0. The target state records
/// (m -+ p) with n unchanged; callers track nu.
Rational k_action(Direction dir, const Rational& nu, int m, int p);

/// Image of Y_m^nu under the printed K at the given eps, divided by Y_m^nu,
/// when that ratio is a constant.
std::optional<Rational> k_printed_on_ground(Direction dir, const Rational& nu, const Rational& eps);

/// Xi_+ = K^p_+ J^q_+ and Xi_- = K^p_- J^q_-, applied to Psi_{m,n}.
/// Throws OutOfFamilyError at the lattice boundary (m < p for Plus, n < q+1
/// for Minus).
LadderAction xi_action(Direction dir, const QuantumState& s, const Params& params);

/// (A_{target}^2 - A_n^2) * coefficient: the commutator of L1 with Xi on Psi_{m,n}.
Rational l1_noncommutation(Direction dir, const QuantumState& s, const Params& params);

struct ParityReport {
    int nmax = 0;
    std::size_t coefficient_count = 0;  // number of scalar coefficient polynomials
    int j_degree = 0;                   // max degree in A of the J^q part
    int k_degree = 0;                   // max degree in A of the K^p part
    bool operator_identity = false;     // J^q_-(n) == J^q_+(n'), K^p_-(kA) == K^p_+(-kA)
    bool swap = false;                  // Xi_-(A) == Xi_+(-A)
    bool sum_even = false;              // Xi_+ + Xi_- even in A
    bool difference_over_a_even = false;
    bool plus_alone_even = false;       // expected false
};

/// Interpolates every scalar coefficient of Xi_+ and Xi_- (eps symbolic) as a
/// polynomial in A over n = 1..nmax and checks the A -> -A structure.
/// Throws InterpolationError if nmax samples cannot certify the degree.
ParityReport parity_check(int nmax, const Params& params);

struct FormulaCheck {
    std::string name;
    Verdict verdict = Verdict::Mismatch;
    Rational ratio;  // computed / claimed when the verdict is MATCH or NORMALIZATION
    std::string detail;
};

/// Scores the printed single-step and q-fold (p-fold) coefficient claims
/// against exact application, over n <= nmax (m <= mmax).
std::vector<FormulaCheck> check_ladder_formulas(const Params& params, int nmax, int mmax);

/// Printed-versus-derived status of every ladder operator at these parameters.
std::vector<OperatorReport> ladder_operator_reports(const Params& params);

}  // namespace xsuperint
