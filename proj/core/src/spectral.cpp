#include "xsuperint/spectral.hpp"

#include "xsuperint/errors.hpp"
#include "xsuperint/operators.hpp"
#include "xsuperint/poly_core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace xsuperint {

namespace {

std::vector<double> to_double(const Poly& p) {
    std::vector<double> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.to_double());
    return out;
}

double wedge_width(const Params& params) { return std::numbers::pi / (2.0 * params.k().to_double()); }

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericalOverflowError(std::string(what) + " is not finite on the grid");
}

}  // namespace

Jet horner(const std::vector<double>& c, double x) {
    Jet j;
    for (std::size_t i = c.size(); i-- > 0;) {
        j.d2 = j.d2 * x + 2.0 * j.d1;
        j.d1 = j.d1 * x + j.f;
        j.f = j.f * x + c[i];
    }
    return j;
}

std::vector<double> derivatives(const std::vector<double>& c, double x, int order) {
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    std::vector<double> cur = c;
    for (int d = 0; d <= order; ++d) {
        double v = 0.0;
        for (std::size_t i = cur.size(); i-- > 0;) v = v * x + cur[i];
        out[static_cast<std::size_t>(d)] = v;
        if (cur.size() <= 1) break;
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 1; i < cur.size(); ++i) next[i - 1] = static_cast<double>(i) * cur[i];
        cur = std::move(next);
    }
    return out;
}

// ------------------------------------------------------------- Wavefunction

Wavefunction::Wavefunction(const QuantumState& state, const Params& params) : state_(state), params_(params) {
    if (state.m < 0 || state.n < 1) throw DomainError("wavefunction needs m >= 0 and n >= 1");
    const Rational nu = params.kA(Rational(state.n));
    angular_poly_ = to_double(xjacobi_basis(state.n, params.alpha(), params.beta()));
    radial_poly_ = to_double(laguerre_poly(state.m, nu));
    nu_ = nu.to_double();
    energy_ = params.omega() * energy_over_omega(state, params).to_double();
    ea_ = (params.alpha() / Rational(2) + Rational(1, 4)).to_double();
    eb_ = (params.beta() / Rational(2) + Rational(1, 4)).to_double();
    b_ = params.b().to_double();
    k_ = params.k().to_double();
    omega_ = params.omega();
}

Jet Wavefunction::radial(double y) const {
    const Jet l = horner(radial_poly_, y);
    const double g = std::pow(y, nu_ / 2.0) * std::exp(-y / 2.0);
    const double lg = nu_ / (2.0 * y) - 0.5;
    const double lg1 = -nu_ / (2.0 * y * y);
    return {g * l.f, g * (lg * l.f + l.d1), g * ((lg1 + lg * lg) * l.f + 2.0 * lg * l.d1 + l.d2)};
}

Jet Wavefunction::angular(double x) const { return angular(x, 1.0 - x, 1.0 + x); }

Jet Wavefunction::angular(double x, double omx, double opx) const {
    const Jet p = horner(angular_poly_, x);
    const double g = std::pow(omx, ea_) * std::pow(opx, eb_) / (b_ - x);
    const double lg = -ea_ / omx + eb_ / opx - 1.0 / (x - b_);
    const double lg1 = -ea_ / (omx * omx) - eb_ / (opx * opx) + 1.0 / ((x - b_) * (x - b_));
    return {g * p.f, g * (lg * p.f + p.d1), g * ((lg1 + lg * lg) * p.f + 2.0 * lg * p.d1 + p.d2)};
}

double Wavefunction::operator()(double r, double phi) const {
    if (!(r > 0.0) || !(phi > 0.0) || !(phi < std::numbers::pi / (2.0 * k_)))
        throw DomainError("point outside the open wedge");
    return radial(omega_ * r * r).f * angular_at(phi).f;
}

Jet Wavefunction::angular_at(double phi) const {
    const double s = std::sin(k_ * phi);
    const double c = std::cos(k_ * phi);
    return angular(std::cos(2.0 * k_ * phi), 2.0 * s * s, 2.0 * c * c);
}

double angular_potential_value(double phi, const Params& params) {
    const double k = params.k().to_double();
    const double a = params.alpha().to_double();
    const double be = params.beta().to_double();
    const double b = params.b().to_double();
    const double s = std::sin(k * phi);
    const double c = std::cos(k * phi);
    const double x = std::cos(2.0 * k * phi);
    return (a * a - 0.25) / (s * s) + (be * be - 0.25) / (c * c) + 8.0 * (1.0 - b * x) / ((b - x) * (b - x));
}

double Wavefunction::apply_hamiltonian(double r, double phi) const {
    const double y = omega_ * r * r;
    const double x = std::cos(2.0 * k_ * phi);
    const double s = std::sin(2.0 * k_ * phi);
    const Jet f = radial(y);
    const Jet h = angular_at(phi);
    const double R = f.f;
    const double R1 = 2.0 * omega_ * r * f.d1;
    const double R2 = 2.0 * omega_ * f.d1 + 4.0 * omega_ * omega_ * r * r * f.d2;
    const double P = h.f;
    const double P2 = 4.0 * k_ * k_ * (s * s * h.d2 - x * h.d1);
    const double V = angular_potential_value(phi, params_);
    return -0.5 * (R2 * P + R1 * P / r + R * P2 / (r * r)) + 0.5 * omega_ * omega_ * r * r * R * P +
           k_ * k_ / (2.0 * r * r) * V * R * P;
}

// ------------------------------------------------------------------- grids

std::vector<double> WedgeGrid::r_samples(const Params& params) const {
    const double rmax = r_max > 0.0 ? r_max : 6.0 / std::sqrt(params.omega());
    if (nr < 2 || !(margin > 0.0) || !(margin < 0.5) || !std::isfinite(rmax))
        throw DomainError("grid needs nr >= 2 and 0 < margin < 1/2");
    std::vector<double> out(static_cast<std::size_t>(nr));
    const double lo = margin * rmax;
    for (int i = 0; i < nr; ++i) out[static_cast<std::size_t>(i)] = lo + (rmax - lo) * i / (nr - 1);
    return out;
}

std::vector<double> WedgeGrid::phi_samples(const Params& params) const {
    if (nphi < 2 || !(margin > 0.0) || !(margin < 0.5)) throw DomainError("grid needs nphi >= 2 and 0 < margin < 1/2");
    const double w = wedge_width(params);
    std::vector<double> out(static_cast<std::size_t>(nphi));
    for (int j = 0; j < nphi; ++j) out[static_cast<std::size_t>(j)] = w * (margin + (1.0 - 2.0 * margin) * j / (nphi - 1));
    return out;
}

double schrodinger_residual(const Wavefunction& wf, const WedgeGrid& grid, std::optional<double> energy) {
    const Params& params = wf.params();
    const auto rs = grid.r_samples(params);
    const auto ps = grid.phi_samples(params);
    if (params.omega() * rs.back() * rs.back() > 1400.0)
        throw NumericalOverflowError("r_max is too large for omega: the Gaussian factor underflows");
    const double e = energy.value_or(wf.energy());
    double max_res = 0.0;
    double max_psi = 0.0;
    for (const double r : rs)
        for (const double phi : ps) {
            const double psi = wf(r, phi);
            const double res = wf.apply_hamiltonian(r, phi) - e * psi;
            check_finite(psi, "psi");
            check_finite(res, "residual");
            max_psi = std::max(max_psi, std::abs(psi));
            max_res = std::max(max_res, std::abs(res));
        }
    if (max_psi == 0.0) throw NumericalOverflowError("psi vanishes on the whole grid");
    return max_res / max_psi;
}

double schrodinger_residual(const QuantumState& s, const Params& params, const WedgeGrid& grid) {
    return schrodinger_residual(Wavefunction(s, params), grid);
}

double finite_difference_residual(const Wavefunction& wf, const WedgeGrid& grid, double h) {
    const Params& params = wf.params();
    const double k = params.k().to_double();
    const double omega = params.omega();
    const auto rs = grid.r_samples(params);
    const auto ps = grid.phi_samples(params);
    constexpr int kSub = 24;
    const double r0 = rs.front() + 0.1 * (rs.back() - rs.front());
    const double r1 = rs.front() + 0.9 * (rs.back() - rs.front());
    const double p0 = ps.front() + 0.1 * (ps.back() - ps.front());
    const double p1 = ps.front() + 0.9 * (ps.back() - ps.front());
    double max_res = 0.0;
    double max_psi = 0.0;
    for (int i = 0; i < kSub; ++i)
        for (int j = 0; j < kSub; ++j) {
            const double r = r0 + (r1 - r0) * i / (kSub - 1);
            const double phi = p0 + (p1 - p0) * j / (kSub - 1);
            const double psi = wf(r, phi);
            const double hr = h * std::max(1.0, r);
            const double prp = wf(r + hr, phi);
            const double prm = wf(r - hr, phi);
            const double ppp = wf(r, phi + h);
            const double ppm = wf(r, phi - h);
            const double d2r = (prp - 2.0 * psi + prm) / (hr * hr);
            const double d1r = (prp - prm) / (2.0 * hr);
            const double d2p = (ppp - 2.0 * psi + ppm) / (h * h);
            const double hpsi = -0.5 * (d2r + d1r / r + d2p / (r * r)) + 0.5 * omega * omega * r * r * psi +
                                k * k / (2.0 * r * r) * angular_potential_value(phi, params) * psi;
            max_res = std::max(max_res, std::abs(hpsi - wf.energy() * psi));
            max_psi = std::max(max_psi, std::abs(psi));
        }
    return max_res / max_psi;
}

// -------------------------------------------------------------- quadrature

Quadrature gauss_jacobi(int order, double a, double b) {
    if (order < 1) throw DomainError("quadrature order must be positive");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Gauss-Jacobi needs a, b > -1");
    const auto n = static_cast<Eigen::Index>(order);
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    const double ab = a + b;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double k = static_cast<double>(i);
        const double s = 2.0 * k + ab;
        diag(i) = (i == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (Eigen::Index i = 1; i < n; ++i) {
        const double k = static_cast<double>(i);
        const double s = 2.0 * k + ab;
        sub(i - 1) = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, n > 1 ? Eigen::VectorXd(sub) : Eigen::VectorXd(0), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw QuadratureError("Golub-Welsch eigensolve failed");
    const double mu0 =
        std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(order));
    q.weights.resize(static_cast<std::size_t>(order));
    for (Eigen::Index i = 0; i < n; ++i) {
        q.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        const double v = solver.eigenvectors()(0, i);
        q.weights[static_cast<std::size_t>(i)] = mu0 * v * v;
    }
    return q;
}

OrthogonalityResult angular_orthogonality(int n1, int n2, const Params& params) {
    if (n1 < 1 || n2 < 1) throw DomainError("orthogonality needs n1, n2 >= 1");
    const auto p1 = to_double(xjacobi_basis(n1, params.alpha(), params.beta()));
    const auto p2 = to_double(xjacobi_basis(n2, params.alpha(), params.beta()));
    const double a = params.alpha().to_double();
    const double be = params.beta().to_double();
    const double b = params.b().to_double();
    auto gram = [&](int order, double* g11, double* g22, double* mag) {
        const Quadrature q = gauss_jacobi(order, a, be);
        double g12 = 0.0;
        *g11 = *g22 = *mag = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            const double x = q.nodes[i];
            const double w = q.weights[i] / ((x - b) * (x - b));
            const double v1 = horner(p1, x).f;
            const double v2 = horner(p2, x).f;
            g12 += w * v1 * v2;
            *mag += std::abs(w * v1 * v2);
            *g11 += w * v1 * v1;
            *g22 += w * v2 * v2;
        }
        return g12;
    };
    OrthogonalityResult r;
    double prev = 0.0;
    bool have_prev = false;
    for (int order = 16; order <= 1024; order *= 2) {
        double mag = 0.0;
        r.value = gram(order, &r.norm1, &r.norm2, &mag);
        r.order = order;
        const double scale = std::sqrt(r.norm1 * r.norm2);
        // Rounding in the nodes and in the sum puts a floor under the change.
        const double floor = 128.0 * std::numeric_limits<double>::epsilon() * mag / scale;
        if (have_prev) {
            r.change = std::abs(r.value - prev) / scale;
            if (r.change < std::max(1e-14, floor)) {
                r.normalized = std::abs(r.value) / scale;
                return r;
            }
        }
        prev = r.value;
        have_prev = true;
    }
    throw QuadratureError("angular quadrature did not converge by order 1024");
}

// --------------------------------------------------------------- spectrum

std::vector<Level> degeneracy_table(const Rational& emax, const Params& params) {
    std::map<Rational, std::vector<QuantumState>> levels;
    for (int n = 1;; ++n) {
        if (energy_over_omega({0, n}, params) > emax) break;
        for (int m = 0;; ++m) {
            const QuantumState s{m, n};
            const Rational e = energy_over_omega(s, params);
            if (e > emax) break;
            levels[e].push_back(s);
        }
    }
    std::vector<Level> out;
    for (auto& [e, states] : levels) {
        std::sort(states.begin(), states.end(), [](const QuantumState& a, const QuantumState& b) { return a.m < b.m; });
        out.push_back({e, std::move(states)});
    }
    return out;
}

bool is_arithmetic_chain(const Level& level, const Params& params) {
    for (std::size_t i = 1; i < level.states.size(); ++i) {
        const auto& a = level.states[i - 1];
        const auto& b = level.states[i];
        if (b.m - a.m != params.p() || b.n - a.n != -params.q()) return false;
    }
    return true;
}

// ------------------------------------------------------------ ladder check

LadderNumericReport ladder_numeric_check(const QuantumState& s, Direction dir, const Params& params,
                                         const WedgeGrid& grid) {
    const int p = params.p();
    const int q = params.q();
    const bool inside = dir == Direction::Plus ? s.m >= p : s.n >= q + 1;
    const Rational nu = params.kA(Rational(s.n));
    const Rational eps = energy_over_omega(s, params);
    const Wavefunction source(s, params);

    const DiffOp jop = compose_J_q(dir, Rational(s.n), q, params.alpha(), params.beta(), false);
    const DiffOp kop = gauge_conjugate(compose_K_p(dir, nu, p).at(eps), radial_gauge(nu).inverse());
    const auto pa = to_double(xjacobi_basis(s.n, params.alpha(), params.beta()));
    const auto pr = to_double(laguerre_poly(s.m, nu));
    const double ea = (params.alpha() / Rational(2) + Rational(1, 4)).to_double();
    const double eb = (params.beta() / Rational(2) + Rational(1, 4)).to_double();
    const double b = params.b().to_double();
    const double nud = nu.to_double();
    const double omega = params.omega();
    const double k = params.k().to_double();

    // Value of op(poly) at t and the sum of the magnitudes of its terms.
    auto apply_numeric = [](const DiffOp& op, const std::vector<double>& poly, double t) {
        const auto d = derivatives(poly, t, std::max(op.order(), 0));
        double v = 0.0;
        double mag = 0.0;
        for (int j = 0; j <= op.order(); ++j) {
            const double term = op.coeff(j).eval(t) * d[static_cast<std::size_t>(j)];
            v += term;
            mag += std::abs(term);
        }
        return std::pair{v, mag};
    };

    const auto rs = grid.r_samples(params);
    const auto ps = grid.phi_samples(params);
    std::vector<double> rimg, ximg;
    double r_val = 0.0, r_mag = 0.0, x_val = 0.0, x_mag = 0.0;
    for (const double r : rs) {
        const double y = omega * r * r;
        const double g = std::pow(y, nud / 2.0) * std::exp(-y / 2.0);
        const auto [v, mag] = apply_numeric(kop, pr, y);
        rimg.push_back(g * v);
        r_val = std::max(r_val, std::abs(g * v));
        r_mag = std::max(r_mag, g * mag);
    }
    for (const double phi : ps) {
        const double x = std::cos(2.0 * k * phi);
        const double sk = std::sin(k * phi);
        const double ck = std::cos(k * phi);
        const double g = std::pow(2.0 * sk * sk, ea) * std::pow(2.0 * ck * ck, eb) / (b - x);
        const auto [v, mag] = apply_numeric(jop, pa, x);
        ximg.push_back(g * v);
        x_val = std::max(x_val, std::abs(g * v));
        x_mag = std::max(x_mag, std::abs(g) * mag);
    }

    LadderNumericReport rep;
    if (!inside) {
        // The vanishing factor is measured against the size of its own terms.
        rep.status = LadderStatus::Annihilated;
        rep.target = s;
        const double val = dir == Direction::Plus ? r_val : x_val;
        const double mag = dir == Direction::Plus ? r_mag : x_mag;
        rep.deviation = mag > 0.0 ? val / mag : 0.0;
        return rep;
    }

    const LadderAction exact = xi_action(dir, s, params);
    const Wavefunction target(exact.target, params);
    std::vector<double> tr, tx;
    for (const double r : rs) tr.push_back(target.radial(omega * r * r).f);
    for (const double phi : ps) tx.push_back(target.angular_at(phi).f);
    double num_r = 0.0, den_r = 0.0, num_x = 0.0, den_x = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        num_r += rimg[i] * tr[i];
        den_r += tr[i] * tr[i];
    }
    for (std::size_t j = 0; j < ps.size(); ++j) {
        num_x += ximg[j] * tx[j];
        den_x += tx[j] * tx[j];
    }
    const double c = (num_r / den_r) * (num_x / den_x);
    double max_dev = 0.0, max_tgt = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
            const double t = c * tr[i] * tx[j];
            max_dev = std::max(max_dev, std::abs(rimg[i] * ximg[j] - t));
            max_tgt = std::max(max_tgt, std::abs(t));
        }
    rep.status = LadderStatus::Proportional;
    rep.target = exact.target;
    rep.fitted = c;
    rep.exact = exact.coefficient.to_double();
    rep.deviation = max_dev / max_tgt;
    rep.ratio = c / rep.exact;
    rep.target_residual = schrodinger_residual(target, grid, source.energy());
    return rep;
}

unsigned thread_count() {
    if (const char* env = std::getenv("XSUPERINT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

}  // namespace xsuperint
