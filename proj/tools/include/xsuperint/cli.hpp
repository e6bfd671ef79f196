#pragma once

#include "xsuperint/classical.hpp"
#include "xsuperint/params.hpp"
#include "xsuperint/spectral.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xsuperint::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kConfigError = 2 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed command-line and config-file values. alpha, beta and emax stay as
/// rational strings until validate() turns them into exact values.
struct RunConfig {
    std::string alpha = "1";
    std::string beta = "3";
    double omega = 1.0;
    int p = 1;
    int q = 1;
    int mmax = 4;
    int nmax = 4;
    std::string emax = "12";  // in units of omega
    int grid = 200;
    double r_max = 0.0;  // 0 selects 6 / sqrt(omega)
    double margin = 1e-3;
    double dt = 0.0;     // 0 selects T_r / 200
    double t_end = 0.0;  // 0 selects 10 q T_r
    double tol = 1e-9;
    std::string format = "csv";
    std::string out = ".";
    bool classical = false;
    int m = 0;
    int n = 1;
    std::string state;  // "r,phi,p_r,p_phi", "minimum", or empty for the default

    /// Exact model parameters. Throws ConfigError with the reason.
    Params params() const;
    Rational emax_value() const;
    WedgeGrid wedge_grid() const;
    ClassicalParams classical_params() const;
    PhaseState initial_state() const;
};

/// Formats with 17 significant digits.
std::string fmt(double v);

int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
/// Writes psi_m<m>_n<n>.csv and its .json sidecar into cfg.out.
int cmd_export_wavefunction(const RunConfig& cfg, std::ostream& out);
/// Writes orbit.csv into cfg.out and prints the summary line.
int cmd_orbit(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xsuperint::cli
