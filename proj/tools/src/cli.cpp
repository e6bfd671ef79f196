#include "xsuperint/cli.hpp"

#include "xsuperint/errors.hpp"
#include "xsuperint/ladders.hpp"
#include "xsuperint/operators.hpp"
#include "xsuperint/poly_core.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace xsuperint::cli {

namespace {

constexpr double kOrthogonalityTol = 1e-12;
constexpr double kLadderDeviationTol = 1e-8;
constexpr double kLadderRatioTol = 1e-10;
constexpr double kDriftTol = 1e-8;
constexpr double kClosureTol = 1e-6;
constexpr int kParityNmax = 8;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Rational parse_rational(const std::string& name, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError("--" + name + ": cannot parse '" + text + "' as a rational (" + e.what() + ")");
    }
}

class Reporter {
public:
    explicit Reporter(std::ostream& os) : os_(os) {}

    void line(const std::string& tag, const std::string& text) {
        os_ << tag << ' ' << text << '\n';
        if (tag == "FAIL") ++failures_;
    }
    void check(bool ok, const std::string& text) { line(ok ? "PASS" : "FAIL", text); }
    void verdict(Verdict v, const std::string& text) { line(to_string(v), text); }

    /// Runs fn; any library exception becomes a FAIL line.
    template <class Fn>
    void guarded(const std::string& name, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            line("FAIL", name + ": " + e.what());
        }
    }

    int failures() const { return failures_; }

private:
    std::ostream& os_;
    int failures_ = 0;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw ConfigError("failed writing " + path.string());
}

std::filesystem::path out_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir)) throw ConfigError("--out: " + cfg.out + " is not a directory");
    return dir;
}

}  // namespace

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// --------------------------------------------------------------- RunConfig

Params RunConfig::params() const {
    const Rational a = parse_rational("alpha", alpha);
    const Rational b = parse_rational("beta", beta);
    if (mmax < 0 || nmax < 1) throw ConfigError("--mmax must be >= 0 and --nmax >= 1");
    try {
        return Params(a, b, omega, p, q);
    } catch (const EqualParametersError& e) {
        throw ConfigError(std::string("alpha == beta is not allowed: ") + e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

Rational RunConfig::emax_value() const { return parse_rational("emax", emax); }

WedgeGrid RunConfig::wedge_grid() const {
    if (grid < 2) throw ConfigError("--grid must be >= 2");
    if (!(margin > 0.0) || !(margin < 0.5)) throw ConfigError("--margin must lie in (0, 1/2): the grid must stay inside the wedge");
    if (r_max < 0.0 || !std::isfinite(r_max)) throw ConfigError("--r-max must be positive");
    WedgeGrid g;
    g.nr = grid;
    g.nphi = grid;
    g.r_max = r_max;
    g.margin = margin;
    return g;
}

ClassicalParams RunConfig::classical_params() const {
    const Params pr = params();
    ClassicalParams cp{omega, pr.alpha().to_double(), pr.beta().to_double(), p, q};
    try {
        cp.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return cp;
}

PhaseState RunConfig::initial_state() const {
    const ClassicalParams cp = classical_params();
    if (state.empty()) return default_initial_state(cp);
    if (state == "minimum") return potential_minimum(cp);
    std::vector<double> v;
    std::stringstream ss(state);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--state: cannot parse '" + item + "'");
        }
    }
    if (v.size() != 4) throw ConfigError("--state needs r,phi,p_r,p_phi or 'minimum'");
    const PhaseState s{v[0], v[1], v[2], v[3]};
    if (!(s.r > 0.0) || !(s.phi > 0.0) || !(s.phi < cp.wedge())) throw ConfigError("--state lies outside the wedge");
    return s;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Params params = cfg.params();
    const WedgeGrid grid = cfg.wedge_grid();
    const Rational emax = cfg.emax_value();
    const Rational& alpha = params.alpha();
    const Rational& beta = params.beta();
    Reporter rep(out);
    out << "# alpha=" << alpha.to_string() << " beta=" << beta.to_string() << " omega=" << fmt(params.omega())
        << " k=" << params.k().to_string() << " b=" << params.b().to_string() << '\n';

    // Exact eigen-identity of the X1 polynomials.
    rep.guarded("eigen identity", [&] {
        const DiffOp T = build_T(alpha, beta);
        const Poly bx = Poly(params.b()) - Poly::x();
        bool ok = true;
        for (int n = 1; n <= cfg.nmax; ++n) {
            const Poly ph = xjacobi_basis(n, alpha, beta);
            const Rational a = params.A(Rational(n));
            const RatFunc r = T.apply(RatFunc(ph)) - RatFunc(a * a) * RatFunc(ph);
            if (!(RatFunc(bx) * r).is_zero()) ok = false;
        }
        rep.check(ok, "eigen identity (b-x)(T P-hat_n - A_n^2 P-hat_n) = 0 exactly, n=1.." + std::to_string(cfg.nmax));
    });

    // Reconciliation of printed formulas.
    rep.guarded("reconciliation", [&] {
        const ReconcileReport rr = reconcile_xjacobi(cfg.nmax, alpha, beta);
        rep.line("INFO", "convention: " + rr.convention);
        for (const auto& e : rr.entries) {
            rep.verdict(e.verdict, "printed P-hat_" + std::to_string(e.n) + " = " + e.printed.to_string() +
                                       " vs derived-T eigenpolynomial " + e.eigen.to_string());
            if (e.printed_operator_eigen)
                rep.verdict(e.printed_operator_verdict,
                            "printed P-hat_" + std::to_string(e.n) + " = " + e.printed.to_string() +
                                " vs printed-T eigenpolynomial " + e.printed_operator_eigen->to_string());
            else
                rep.verdict(e.printed_operator_verdict, "printed T has no degree-" + std::to_string(e.n) +
                                                            " eigenpolynomial at eigenvalue A_n^2");
        }
        for (const auto& r : ladder_operator_reports(params))
            rep.verdict(r.printed_verdict, "printed " + r.name + ": " + r.detail);
        for (const auto& c : check_ladder_formulas(params, std::min(cfg.nmax, 6), std::min(cfg.mmax, 6))) {
            std::string text = c.name;
            if (c.verdict == Verdict::Match || c.verdict == Verdict::Normalization)
                text += " (computed/claimed = " + c.ratio.to_string() + ")";
            if (!c.detail.empty()) text += ": " + c.detail;
            rep.verdict(c.verdict, text);
        }
    });

    rep.guarded("orthogonality", [&] {
        const int top = std::max(cfg.nmax, 2);
        double worst = 0.0;
        for (int n1 = 1; n1 <= top; ++n1)
            for (int n2 = n1 + 1; n2 <= top; ++n2)
                worst = std::max(worst, angular_orthogonality(n1, n2, params).normalized);
        rep.check(worst < kOrthogonalityTol, "angular orthogonality n<=" + std::to_string(top) + ": max |G_12|/sqrt(G_11 G_22) = " +
                                                 sci(worst) + " (tol " + sci(kOrthogonalityTol) + ")");
    });

    rep.guarded("residual", [&] {
        double worst = 0.0;
        for (int m = 0; m <= cfg.mmax; ++m)
            for (int n = 1; n <= cfg.nmax; ++n) worst = std::max(worst, schrodinger_residual({m, n}, params, grid));
        rep.check(worst < cfg.tol, "Schrodinger residual m<=" + std::to_string(cfg.mmax) +
                                       " n<=" + std::to_string(cfg.nmax) + ": " + sci(worst) + " (tol " +
                                       sci(cfg.tol) + ")");
    });

    rep.guarded("ladder closure", [&] {
        int exact = 0;
        double dev = 0.0;
        double ratio = 0.0;
        double annihilated = 0.0;
        for (int m = 0; m <= cfg.mmax; ++m)
            for (int n = 1; n <= cfg.nmax; ++n)
                for (const Direction dir : {Direction::Plus, Direction::Minus}) {
                    const QuantumState s{m, n};
                    const auto r = ladder_numeric_check(s, dir, params, grid);
                    if (r.status == LadderStatus::Annihilated) {
                        annihilated = std::max(annihilated, r.deviation);
                        continue;
                    }
                    const LadderAction a = xi_action(dir, s, params);
                    if (a.source_energy == a.target_energy) ++exact;
                    dev = std::max(dev, r.deviation);
                    ratio = std::max(ratio, std::abs(r.ratio - 1.0));
                }
        rep.check(exact > 0, "Xi targets keep the exact energy (" + std::to_string(exact) + " interior actions)");
        rep.check(dev < kLadderDeviationTol && ratio < kLadderRatioTol && annihilated < kLadderDeviationTol,
                  "ladder numeric check: deviation " + sci(dev) + ", |ratio-1| " + sci(ratio) + ", boundary images " +
                      sci(annihilated));
    });

    rep.guarded("degeneracy", [&] {
        const auto levels = degeneracy_table(emax, params);
        bool ok = true;
        std::size_t top = 0;
        for (const auto& l : levels) {
            ok = ok && is_arithmetic_chain(l, params);
            top = std::max(top, l.states.size());
        }
        rep.check(ok, "degeneracy chains step (" + std::to_string(params.p()) + "," + std::to_string(-params.q()) +
                          ") up to E/omega=" + emax.to_string() + ": " + std::to_string(levels.size()) +
                          " levels, max multiplicity " + std::to_string(top));
    });

    rep.guarded("parity", [&] {
        const ParityReport pr = parity_check(kParityNmax, params);
        rep.check(pr.operator_identity && pr.swap && pr.sum_even && pr.difference_over_a_even && !pr.plus_alone_even,
                  "parity: Xi_-(A) = Xi_+(-A) over n=1.." + std::to_string(pr.nmax) + " (" +
                      std::to_string(pr.coefficient_count) + " coefficients, degree " + std::to_string(pr.j_degree) +
                      "+" + std::to_string(pr.k_degree) + ")");
        bool nonzero = true;
        for (int m = 0; m <= cfg.mmax; ++m)
            for (int n = 1; n <= cfg.nmax; ++n) {
                if (m >= params.p() && l1_noncommutation(Direction::Plus, {m, n}, params).is_zero()) nonzero = false;
                if (n >= params.q() + 1 && l1_noncommutation(Direction::Minus, {m, n}, params).is_zero())
                    nonzero = false;
            }
        rep.check(nonzero, "[L1, Xi] != 0 on every interior state");
    });

    if (cfg.classical) {
        rep.guarded("classical", [&] {
            const ClassicalParams cp = cfg.classical_params();
            const double tr = cp.radial_period();
            const double dt = cfg.dt > 0.0 ? cfg.dt : tr / 200.0;
            const Trajectory traj = integrate(cfg.initial_state(), cp, dt, 1000.0 * tr);
            const Drift d = conservation_drift(traj, cp);
            rep.check(d.energy < kDriftTol && d.l1 < kDriftTol,
                      "classical drift over 1000 radial periods: H " + sci(d.energy) + ", L1 " + sci(d.l1));
            const double c = closure_metric(traj, cp);
            rep.check(c < kClosureTol, "classical closure at " + std::to_string(cp.q) + " radial periods: " + sci(c));
            const ConvergenceStudy st = convergence_order(cfg.initial_state(), cp, tr / 32.0, cp.q * tr);
            rep.check(st.order() >= 8.0, "classical convergence order: " + fmt(st.order()));
        });
    }

    out << "# " << (rep.failures() == 0 ? "all checks passed" : std::to_string(rep.failures()) + " check(s) failed")
        << '\n';
    return rep.failures() == 0 ? kPass : kFail;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const Params params = cfg.params();
    const Rational emax = cfg.emax_value();
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
    const auto levels = degeneracy_table(emax, params);
    if (cfg.format == "csv") {
        out << "level,m,n,E_over_omega,E\n";
        for (std::size_t i = 0; i < levels.size(); ++i)
            for (const auto& s : levels[i].states)
                out << i << ',' << s.m << ',' << s.n << ',' << levels[i].energy.to_string() << ','
                    << fmt(params.omega() * levels[i].energy.to_double()) << '\n';
        return kPass;
    }
    nlohmann::ordered_json j;
    j["alpha"] = params.alpha().to_string();
    j["beta"] = params.beta().to_string();
    j["omega"] = params.omega();
    j["p"] = params.p();
    j["q"] = params.q();
    j["emax"] = emax.to_string();
    j["levels"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        nlohmann::ordered_json l;
        l["level"] = i;
        l["E_over_omega"] = levels[i].energy.to_string();
        l["E"] = params.omega() * levels[i].energy.to_double();
        l["states"] = nlohmann::ordered_json::array();
        for (const auto& s : levels[i].states) l["states"].push_back({{"m", s.m}, {"n", s.n}});
        j["levels"].push_back(std::move(l));
    }
    out << j.dump(2) << '\n';
    return kPass;
}

// ----------------------------------------------------- export-wavefunction

int cmd_export_wavefunction(const RunConfig& cfg, std::ostream& out) {
    const Params params = cfg.params();
    const WedgeGrid grid = cfg.wedge_grid();
    if (cfg.m < 0 || cfg.n < 1) throw ConfigError("state needs --m >= 0 and --n >= 1");
    const Wavefunction wf({cfg.m, cfg.n}, params);
    std::vector<double> rs, ps;
    try {
        rs = grid.r_samples(params);
        ps = grid.phi_samples(params);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    if (params.omega() * rs.back() * rs.back() > 1400.0)
        throw ConfigError("grid: r_max is too large for omega (the Gaussian factor underflows)");

    std::string csv = "r,phi,psi\n";
    for (const double r : rs)
        for (const double phi : ps) csv += fmt(r) + ',' + fmt(phi) + ',' + fmt(wf(r, phi)) + '\n';

    nlohmann::ordered_json meta;
    meta["m"] = cfg.m;
    meta["n"] = cfg.n;
    meta["alpha"] = params.alpha().to_string();
    meta["beta"] = params.beta().to_string();
    meta["omega"] = params.omega();
    meta["p"] = params.p();
    meta["q"] = params.q();
    meta["energy"] = wf.energy();
    meta["energy_over_omega"] = energy_over_omega({cfg.m, cfg.n}, params).to_string();
    meta["nr"] = grid.nr;
    meta["nphi"] = grid.nphi;
    meta["r_max"] = rs.back();
    meta["margin"] = grid.margin;

    const auto dir = out_dir(cfg);
    const std::string stem = "psi_m" + std::to_string(cfg.m) + "_n" + std::to_string(cfg.n);
    write_file(dir / (stem + ".csv"), csv);
    write_file(dir / (stem + ".json"), meta.dump(2) + "\n");
    out << "wrote " << (dir / (stem + ".csv")).string() << " (" << rs.size() * ps.size() << " points) and "
        << (dir / (stem + ".json")).string() << '\n';
    return kPass;
}

// ------------------------------------------------------------------- orbit

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
    const ClassicalParams cp = cfg.classical_params();
    const PhaseState s0 = cfg.initial_state();
    const double tr = cp.radial_period();
    const double dt = cfg.dt > 0.0 ? cfg.dt : tr / 200.0;
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : 10.0 * cp.q * tr;
    Trajectory traj;
    try {
        traj = integrate(s0, cp, dt, t_end);
    } catch (const WedgeExitError& e) {
        out << "FAIL orbit: " << e.what() << '\n';
        return kFail;
    } catch (const StepSizeTooLargeError& e) {
        out << "FAIL orbit: " << e.what() << '\n';
        return kFail;
    }
    std::string csv = "t,r,phi,p_r,p_phi,H,L1\n";
    for (const auto& smp : traj.samples) {
        const auto& s = smp.state;
        csv += fmt(smp.t) + ',' + fmt(s.r) + ',' + fmt(s.phi) + ',' + fmt(s.p_r) + ',' + fmt(s.p_phi) + ',' +
               fmt(h_classical(s, cp)) + ',' + fmt(l1_classical(s, cp)) + '\n';
    }
    const auto dir = out_dir(cfg);
    write_file(dir / "orbit.csv", csv);
    const Drift d = conservation_drift(traj, cp);
    std::string closure = "n/a (span shorter than " + std::to_string(cp.q) + " radial periods)";
    try {
        closure = fmt(closure_metric(traj, cp));
    } catch (const InsufficientSpanError&) {
    }
    out << "orbit k=" << cp.p << '/' << cp.q << " dt=" << fmt(traj.step) << " t_end=" << fmt(t_end)
        << " steps=" << traj.samples.size() - 1 << " energy_drift=" << fmt(d.energy) << " l1_drift=" << fmt(d.l1)
        << " closure=" << closure << '\n';
    return kPass;
}

// --------------------------------------------------------------------- run

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact and numerical checks for a superintegrable wedge Hamiltonian with X1 Jacobi states"};
    app.set_config("--config", "", "Flat key=value file; command-line flags override it");
    app.add_option("--alpha", cfg.alpha, "alpha as an exact rational, e.g. 3/2")->capture_default_str();
    app.add_option("--beta", cfg.beta, "beta as an exact rational")->capture_default_str();
    app.add_option("--omega", cfg.omega, "oscillator frequency")->capture_default_str();
    app.add_option("--p", cfg.p, "k = p/q")->capture_default_str();
    app.add_option("--q", cfg.q, "k = p/q")->capture_default_str();
    app.add_option("--mmax", cfg.mmax, "largest radial index")->capture_default_str();
    app.add_option("--nmax", cfg.nmax, "largest angular index")->capture_default_str();
    app.add_option("--emax", cfg.emax, "energy cutoff in units of omega (rational)")->capture_default_str();
    app.add_option("--grid", cfg.grid, "grid points per axis")->capture_default_str();
    app.add_option("--r-max", cfg.r_max, "outer radius of the grid (0: 6/sqrt(omega))")->capture_default_str();
    app.add_option("--margin", cfg.margin, "fractional distance of the grid from the wedge edges")
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "classical step (0: T_r/200)")->capture_default_str();
    app.add_option("--t-end", cfg.t_end, "classical end time (0: 10 q T_r)")->capture_default_str();
    app.add_option("--tol", cfg.tol, "Schrodinger residual tolerance")->capture_default_str();
    app.add_option("--format", cfg.format, "csv or json")->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_flag("--classical", cfg.classical, "include the classical checks in verify");
    app.add_option("--m", cfg.m, "radial index for export-wavefunction")->capture_default_str();
    app.add_option("--n", cfg.n, "angular index for export-wavefunction")->capture_default_str();
    app.add_option("--state", cfg.state, "orbit start: r,phi,p_r,p_phi or 'minimum'");
    auto* verify = app.add_subcommand("verify", "run every exact and numerical check");
    auto* spectrum = app.add_subcommand("spectrum", "list levels up to --emax");
    auto* wave = app.add_subcommand("export-wavefunction", "write Psi_{m,n} on the wedge grid");
    auto* orbit = app.add_subcommand("orbit", "integrate a classical trajectory");
    for (auto* sub : {verify, spectrum, wave, orbit}) sub->fallthrough();
    app.require_subcommand(1);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kConfigError;
    }
    try {
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (spectrum->parsed()) return cmd_spectrum(cfg, out);
        if (wave->parsed()) return cmd_export_wavefunction(cfg, out);
        return cmd_orbit(cfg, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    }
}

}  // namespace xsuperint::cli
