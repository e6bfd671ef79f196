#include "xsuperint/classical.hpp"

#include "xsuperint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>
#include <string>

namespace xsuperint {

namespace {

using Vec = std::array<double, 4>;

Vec to_vec(const PhaseState& s) { return {s.r, s.phi, s.p_r, s.p_phi}; }
PhaseState to_state(const Vec& v) { return {v[0], v[1], v[2], v[3]}; }

bool in_wedge(const PhaseState& s, const ClassicalParams& cp) {
    return std::isfinite(s.r) && std::isfinite(s.phi) && std::isfinite(s.p_r) && std::isfinite(s.p_phi) &&
           s.r > 0.0 && s.phi > 0.0 && s.phi < cp.wedge();
}

void require_wedge(const PhaseState& s, const ClassicalParams& cp) {
    if (!in_wedge(s, cp)) throw DomainError("phase-space point outside the wedge");
}

double angular_w(double phi, const ClassicalParams& cp) {
    const double s = std::sin(cp.k() * phi);
    const double c = std::cos(cp.k() * phi);
    return cp.alpha_hat * cp.alpha_hat / (s * s) + cp.beta_hat * cp.beta_hat / (c * c);
}

// Dormand-Prince 8(5,3) stage coefficients; only the eighth-order solution is used.
namespace dop {
constexpr long double a21 = 0.05260015195876773187856L;
constexpr long double a31 = 0.01972505698453789945446L, a32 = 0.05917517095361369836338L;
constexpr long double a41 = 0.02958758547680684918169L, a43 = 0.08876275643042054754507L;
constexpr long double a51 = 0.24136513415926668550237L, a53 = -0.88454947932828608534486L,
                 a54 = 0.92483400326179200311574L;
constexpr long double a61 = 0.03703703703703703703704L, a64 = 0.17082860872947387127960L,
                 a65 = 0.12546768756682242501669L;
constexpr long double a71 = 0.03710937500000000000000L, a74 = 0.17025221101954403931498L,
                 a75 = 0.06021653898045596068502L, a76 = -0.01757812500000000000000L;
constexpr long double a81 = 0.03709200011850479271088L, a84 = 0.17038392571223999381021L,
                 a85 = 0.10726203044637328465181L, a86 = -0.01531943774862440175279L,
                 a87 = 0.00827378916381402288758L;
constexpr long double a91 = 0.62411095871607571711443L, a94 = -3.36089262944694129406857L,
                 a95 = -0.86821934684172600681819L, a96 = 27.5920996994467083049416L,
                 a97 = 20.1540675504778934086187L, a98 = -43.4898841810699588477366L;
constexpr long double a101 = 0.47766253643826436589043L, a104 = -2.48811461997166764192642L,
                 a105 = -0.59029082683684299637145L, a106 = 21.2300514481811942347289L,
                 a107 = 15.2792336328824235832597L, a108 = -33.2882109689848629194453L,
                 a109 = -0.02033120170850862613582L;
constexpr long double a111 = -0.93714243008598732571704L, a114 = 5.18637242884406370830024L,
                 a115 = 1.09143734899672957818500L, a116 = -8.14978701074692612513997L,
                 a117 = -18.5200656599969598641566L, a118 = 22.7394870993505042818970L,
                 a119 = 2.49360555267965238987089L, a1110 = -3.04676447189821950038237L;
constexpr long double a121 = 2.27331014751653820792360L, a124 = -10.5344954667372501984067L,
                 a125 = -2.00087205822486249909676L, a126 = -17.9589318631187989172766L,
                 a127 = 27.9488845294199600508500L, a128 = -2.85899827713502369474066L,
                 a129 = -8.87285693353062954433549L, a1210 = 12.3605671757943030647266L,
                 a1211 = 0.64339274601576353035597L;
constexpr long double b1 = 0.05429373411656876223805L, b6 = 4.45031289275240888144114L, b7 = 1.89151789931450038304282L,
                 b8 = -5.80120396001058478146721L, b9 = 0.31116436695781989440892L,
                 b10 = -0.15216094966251607855618L, b11 = 0.20136540080403034837478L,
                 b12 = 0.04471061572777259051769L;
}  // namespace dop

template <class T>
using VecT = std::array<T, 4>;

template <class T>
VecT<T> rhs(const VecT<T>& v, const ClassicalParams& cp) {
    using std::cos;
    using std::sin;
    const T r = v[0];
    const T phi = v[1];
    const T wedge = static_cast<T>(cp.wedge());
    if (!(r > 0) || !(phi > 0) || !(phi < wedge) || !std::isfinite(static_cast<double>(v[2])) ||
        !std::isfinite(static_cast<double>(v[3])))
        throw WedgeExitError("trajectory left the wedge (r=" + std::to_string(static_cast<double>(r)) +
                             ", phi=" + std::to_string(static_cast<double>(phi)) + "); reduce dt");
    const T k = static_cast<T>(cp.p) / static_cast<T>(cp.q);
    const T sn = sin(k * phi);
    const T cs = cos(k * phi);
    const T a2 = static_cast<T>(cp.alpha_hat) * static_cast<T>(cp.alpha_hat);
    const T b2 = static_cast<T>(cp.beta_hat) * static_cast<T>(cp.beta_hat);
    const T om2 = static_cast<T>(cp.omega_hat) * static_cast<T>(cp.omega_hat);
    const T w = a2 / (sn * sn) + b2 / (cs * cs);
    const T dw = 2 * k * (-a2 * cs / (sn * sn * sn) + b2 * sn / (cs * cs * cs));
    const T r2 = r * r;
    const T r3 = r2 * r;
    return {v[2], v[3] / r2, v[3] * v[3] / r3 - om2 * r + k * k * w / r3, -k * k / (2 * r2) * dw};
}

template <class T, class... Terms>
VecT<T> combo(const VecT<T>& x, T h, const Terms&... terms) {
    VecT<T> out = x;
    for (std::size_t i = 0; i < 4; ++i) out[i] += h * (... + (static_cast<T>(terms.first) * terms.second[i]));
    return out;
}

template <class T>
VecT<T> dop853_step(const VecT<T>& x, T h, const ClassicalParams& cp) {
    using namespace dop;
    using Vec = VecT<T>;
    using P = std::pair<long double, const Vec&>;
    const Vec k1 = rhs<T>(x, cp);
    const Vec k2 = rhs<T>(combo(x, h, P{a21, k1}), cp);
    const Vec k3 = rhs<T>(combo(x, h, P{a31, k1}, P{a32, k2}), cp);
    const Vec k4 = rhs<T>(combo(x, h, P{a41, k1}, P{a43, k3}), cp);
    const Vec k5 = rhs<T>(combo(x, h, P{a51, k1}, P{a53, k3}, P{a54, k4}), cp);
    const Vec k6 = rhs<T>(combo(x, h, P{a61, k1}, P{a64, k4}, P{a65, k5}), cp);
    const Vec k7 = rhs<T>(combo(x, h, P{a71, k1}, P{a74, k4}, P{a75, k5}, P{a76, k6}), cp);
    const Vec k8 = rhs<T>(combo(x, h, P{a81, k1}, P{a84, k4}, P{a85, k5}, P{a86, k6}, P{a87, k7}), cp);
    const Vec k9 = rhs<T>(combo(x, h, P{a91, k1}, P{a94, k4}, P{a95, k5}, P{a96, k6}, P{a97, k7}, P{a98, k8}), cp);
    const Vec k10 = rhs<T>(
        combo(x, h, P{a101, k1}, P{a104, k4}, P{a105, k5}, P{a106, k6}, P{a107, k7}, P{a108, k8}, P{a109, k9}), cp);
    const Vec k11 = rhs<T>(combo(x, h, P{a111, k1}, P{a114, k4}, P{a115, k5}, P{a116, k6}, P{a117, k7}, P{a118, k8},
                              P{a119, k9}, P{a1110, k10}),
                        cp);
    const Vec k12 = rhs<T>(combo(x, h, P{a121, k1}, P{a124, k4}, P{a125, k5}, P{a126, k6}, P{a127, k7}, P{a128, k8},
                              P{a129, k9}, P{a1210, k10}, P{a1211, k11}),
                        cp);
    return combo(x, h, P{b1, k1}, P{b6, k6}, P{b7, k7}, P{b8, k8}, P{b9, k9}, P{b10, k10}, P{b11, k11},
                 P{b12, k12});
}

}  // namespace

void ClassicalParams::validate() const {
    if (!(omega_hat > 0.0) || !(alpha_hat > 0.0) || !(beta_hat > 0.0) || !std::isfinite(omega_hat) ||
        !std::isfinite(alpha_hat) || !std::isfinite(beta_hat))
        throw DomainError("classical parameters need omega, alpha, beta > 0");
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw DomainError("k = p/q needs coprime positive p, q");
}

double ClassicalParams::wedge() const { return std::numbers::pi / (2.0 * k()); }
double ClassicalParams::radial_period() const { return std::numbers::pi / omega_hat; }

double h_classical(const PhaseState& s, const ClassicalParams& cp) {
    require_wedge(s, cp);
    const double k = cp.k();
    return 0.5 * (s.p_r * s.p_r + s.p_phi * s.p_phi / (s.r * s.r)) + 0.5 * cp.omega_hat * cp.omega_hat * s.r * s.r +
           k * k / (2.0 * s.r * s.r) * angular_w(s.phi, cp);
}

double l1_classical(const PhaseState& s, const ClassicalParams& cp) {
    require_wedge(s, cp);
    const double k = cp.k();
    return s.p_phi * s.p_phi / (k * k) + angular_w(s.phi, cp);
}

std::array<double, 4> hamilton_rhs(const PhaseState& s, const ClassicalParams& cp) {
    require_wedge(s, cp);
    return rhs<double>(to_vec(s), cp);
}

PhaseState potential_minimum(const ClassicalParams& cp) {
    cp.validate();
    const double k = cp.k();
    const double phi = std::atan(std::sqrt(cp.alpha_hat / cp.beta_hat)) / k;
    const double wmin = (cp.alpha_hat + cp.beta_hat) * (cp.alpha_hat + cp.beta_hat);
    return {std::sqrt(k * std::sqrt(wmin) / cp.omega_hat), phi, 0.0, 0.0};
}

PhaseState default_initial_state(const ClassicalParams& cp) {
    const PhaseState m = potential_minimum(cp);
    return {1.3 * m.r, 0.8 * m.phi, 0.2 * cp.omega_hat * m.r, 0.3 * cp.k() * (cp.alpha_hat + cp.beta_hat)};
}

Trajectory integrate(const PhaseState& s0, const ClassicalParams& cp, double dt, double t_end,
                     const IntegrateOptions& opts) {
    cp.validate();
    require_wedge(s0, cp);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be non-negative");
    Trajectory traj;
    traj.samples.push_back({0.0, s0});
    if (t_end == 0.0) {
        traj.step = dt;
        return traj;
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(steps);
    traj.step = h;
    traj.samples.reserve(steps + 1);
    const double h0 = h_classical(s0, cp);
    const double scale = std::max(std::abs(h0), 1e-300);
    Vec x = to_vec(s0);
    for (std::size_t i = 1; i <= steps; ++i) {
        x = dop853_step<double>(x, h, cp);
        const PhaseState s = to_state(x);
        if (!in_wedge(s, cp))
            throw WedgeExitError("trajectory left the wedge at t=" + std::to_string(i * h) + "; reduce dt");
        const double drift = std::abs(h_classical(s, cp) - h0) / scale;
        if (drift > opts.drift_guard)
            throw StepSizeTooLargeError("energy drift " + std::to_string(drift) + " exceeds the guard at t=" +
                                        std::to_string(i * h) + "; reduce dt");
        traj.samples.push_back({static_cast<double>(i) * h, s});
    }
    return traj;
}

double closure_metric(const Trajectory& traj, const ClassicalParams& cp, int periods) {
    cp.validate();
    if (periods <= 0) periods = cp.q;
    if (traj.samples.empty()) throw InsufficientSpanError("empty trajectory");
    const double tr = cp.radial_period();
    const double horizon = periods * tr;
    const double tol = 0.5 * traj.step;
    if (traj.samples.back().t < horizon - tol)
        throw InsufficientSpanError("trajectory spans " + std::to_string(traj.samples.back().t / tr) +
                                    " radial periods, closure needs " + std::to_string(periods));
    Vec lo = to_vec(traj.samples.front().state);
    Vec hi = lo;
    for (const auto& smp : traj.samples) {
        if (smp.t > horizon + tol) break;
        const Vec v = to_vec(smp.state);
        for (std::size_t i = 0; i < 4; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    const Vec x0 = to_vec(traj.samples.front().state);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& smp : traj.samples) {
        if (smp.t <= 0.5 * tr) continue;
        if (smp.t > horizon + tol) break;
        const Vec v = to_vec(smp.state);
        double d2 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            // A coordinate that barely moves (e.g. at equilibrium) is measured against a floor so
            // rounding noise is not blown up to O(1).
            const double floor = 1e-8 * std::max(1.0, std::abs(x0[i]));
            const double d = (v[i] - x0[i]) / std::max(hi[i] - lo[i], floor);
            d2 += d * d;
        }
        best = std::min(best, std::sqrt(d2));
    }
    return best;
}

Drift conservation_drift(const Trajectory& traj, const ClassicalParams& cp) {
    Drift d;
    if (traj.samples.empty()) return d;
    const double h0 = h_classical(traj.samples.front().state, cp);
    const double l0 = l1_classical(traj.samples.front().state, cp);
    for (const auto& smp : traj.samples) {
        d.energy = std::max(d.energy, std::abs(h_classical(smp.state, cp) - h0) / std::abs(h0));
        d.l1 = std::max(d.l1, std::abs(l1_classical(smp.state, cp) - l0) / std::abs(l0));
    }
    return d;
}

ConvergenceStudy convergence_order(const PhaseState& s0, const ClassicalParams& cp, double dt, double t_end) {
    cp.validate();
    require_wedge(s0, cp);
    if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("convergence order needs dt > 0 and t_end > 0");
    // Extended precision keeps rounding below the truncation error down to dt/8.
    using LD = long double;
    // States at the coarse step times, so every refinement is compared on
    // the same instants.
    const auto coarse = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    auto samples = [&](unsigned refine) {
        const LD h = static_cast<LD>(t_end) / static_cast<LD>(coarse * refine);
        VecT<LD> x{s0.r, s0.phi, s0.p_r, s0.p_phi};
        std::vector<VecT<LD>> out;
        for (std::size_t i = 0; i < coarse; ++i) {
            for (unsigned j = 0; j < refine; ++j) x = dop853_step<LD>(x, h, cp);
            out.push_back(x);
        }
        return out;
    };
    std::array<std::vector<VecT<LD>>, 4> y;
    for (unsigned j = 0; j < 4; ++j) y[j] = samples(1u << j);
    ConvergenceStudy out;
    std::array<LD, 3> d{};
    for (std::size_t j = 0; j < 3; ++j) {
        // RMS over all instants: a single end point is sensitive to where the
        // rotating error vector happens to point.
        for (std::size_t t = 0; t < coarse; ++t)
            for (std::size_t i = 0; i < 4; ++i) {
                const LD e = y[j][t][i] - y[j + 1][t][i];
                d[j] += e * e;
            }
        d[j] = std::sqrt(d[j] / static_cast<LD>(coarse));
        out.differences[j] = static_cast<double>(d[j]);
    }
    if (d[1] == 0 || d[2] == 0) throw DomainError("convergence order: differences reached zero; increase dt");
    out.orders[0] = static_cast<double>(std::log2(d[0] / d[1]));
    out.orders[1] = static_cast<double>(std::log2(d[1] / d[2]));
    return out;
}

}  // namespace xsuperint
