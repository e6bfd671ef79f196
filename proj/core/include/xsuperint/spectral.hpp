#pragma once

#include "xsuperint/ladders.hpp"
#include "xsuperint/params.hpp"
#include "xsuperint/rational.hpp"

#include <optional>
#include <vector>

namespace xsuperint {

/// Value and first two derivatives of a scalar function at a point.
struct Jet {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Psi_{m,n}(r, phi) = R(y) X(x) with y = omega r^2, x = cos(2 k phi),
///   R = y^(kA/2) e^(-y/2) L_m^(kA)(y),  X = G_x(x) P-hat_n(x).
/// G_x = (1-x)^(alpha/2+1/4) (1+x)^(beta/2+1/4) / (b-x), positive on the
/// wedge; the sign choice makes Psi_{0,1} positive.
class Wavefunction {
public:
    Wavefunction(const QuantumState& state, const Params& params);

    const QuantumState& state() const { return state_; }
    const Params& params() const { return params_; }
    /// E_{m,n}, including the factor omega.
    double energy() const { return energy_; }
    double nu() const { return nu_; }

    /// Radial factor as a function of y, with y-derivatives.
    Jet radial(double y) const;
    /// Angular factor as a function of x, with x-derivatives.
    Jet angular(double x) const;
    /// Angular factor at phi, with 1 -+ x formed as 2 sin^2, 2 cos^2 of k phi
    /// so that it stays accurate near the wedge edges. Derivatives are in x.
    Jet angular_at(double phi) const;

    /// Throws DomainError outside the open wedge.
    double operator()(double r, double phi) const;

    /// H_k Psi from analytic derivatives.
    double apply_hamiltonian(double r, double phi) const;

private:
    Jet angular(double x, double omx, double opx) const;

    QuantumState state_;
    Params params_;
    std::vector<double> angular_poly_;
    std::vector<double> radial_poly_;
    double nu_ = 0.0;
    double energy_ = 0.0;
    double ea_ = 0.0;
    double eb_ = 0.0;
    double b_ = 0.0;
    double k_ = 0.0;
    double omega_ = 0.0;
};

/// Corrected angular potential of H_k in phi (without the k^2/(2r^2) factor).
double angular_potential_value(double phi, const Params& params);

/// Evaluates sum c_i x^i and its first two derivatives.
Jet horner(const std::vector<double>& c, double x);
/// Same for the polynomial's derivatives of every order up to `order`.
std::vector<double> derivatives(const std::vector<double>& c, double x, int order);

struct WedgeGrid {
    int nr = 200;
    int nphi = 200;
    double r_max = 0.0;  // 0 selects 6 / sqrt(omega)
    double margin = 1e-3;

    /// Samples on [margin*r_max, r_max] and [margin*W, (1-margin)*W],
    /// W = pi/(2k). Throws DomainError for empty or out-of-wedge grids.
    std::vector<double> r_samples(const Params& params) const;
    std::vector<double> phi_samples(const Params& params) const;
};

/// max |(H_k - E) Psi| / max |Psi| over the grid. `energy` overrides E_{m,n}.
/// Throws NumericalOverflowError when Psi is not finite on the grid.
double schrodinger_residual(const Wavefunction& wf, const WedgeGrid& grid, std::optional<double> energy = {});
double schrodinger_residual(const QuantumState& s, const Params& params, const WedgeGrid& grid);

/// Same quantity with H_k applied by central differences of step h on an
/// interior subgrid; an independent cross-check at lower accuracy.
double finite_difference_residual(const Wavefunction& wf, const WedgeGrid& grid, double h = 1e-4);

/// Gauss-Jacobi nodes and weights for (1-x)^a (1+x)^b on [-1, 1] via Golub-Welsch.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_jacobi(int order, double a, double b);

struct OrthogonalityResult {
    double value = 0.0;       // the raw integral
    double normalized = 0.0;  // |value| / sqrt(norm1 * norm2)
    double norm1 = 0.0;
    double norm2 = 0.0;
    int order = 0;            // quadrature order at convergence
    double change = 0.0;      // change from the previous order
};

/// Integral of P-hat_{n1} P-hat_{n2} (1-x)^alpha (1+x)^beta / (x-b)^2 over
/// [-1, 1], with order doubling until the normalized value changes by less
/// than 1e-14 or by less than its rounding floor (128 eps times the sum of
/// absolute terms). Throws QuadratureError if neither happens by order 1024.
OrthogonalityResult angular_orthogonality(int n1, int n2, const Params& params);

/// One energy level: E/omega and its states, sorted by m.
struct Level {
    Rational energy;
    std::vector<QuantumState> states;
};

/// All states with E/omega <= emax, grouped by exact energy, ascending.
std::vector<Level> degeneracy_table(const Rational& emax, const Params& params);
/// True when consecutive states differ by exactly (p, -q).
bool is_arithmetic_chain(const Level& level, const Params& params);

enum class LadderStatus { Proportional, Annihilated };

struct LadderNumericReport {
    LadderStatus status = LadderStatus::Proportional;
    QuantumState target;
    double fitted = 0.0;           // least-squares constant c with image ~ c * target
    double exact = 0.0;            // coefficient from xi_action
    double deviation = 0.0;        // max |image - c target| / max |c target|; when annihilated,
                                   // max |image| / max (sum of |terms|) of the vanishing factor
    double ratio = 0.0;            // fitted / exact
    double target_residual = 0.0;  // Schrodinger residual of the target at the source energy
};

/// Applies Xi_+- to Psi on the grid through floating-point evaluation of the
/// exact operator coefficients, and fits the image against the target state.
LadderNumericReport ladder_numeric_check(const QuantumState& s, Direction dir, const Params& params,
                                         const WedgeGrid& grid);

/// Worker count: XSUPERINT_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, n) on up to thread_count() threads.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn);

}  // namespace xsuperint

#include "xsuperint/detail/parallel.hpp"
