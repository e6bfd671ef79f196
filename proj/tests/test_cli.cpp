#include "xsuperint/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using xsuperint::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("xsuperint_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST(Cli, VerifyDefaultsPass) {
    const Result r = invoke({"verify"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("# all checks passed"), std::string::npos);
    EXPECT_NE(r.out.find("MISMATCH printed P-hat_1"), std::string::npos);
}

TEST(Cli, VerifyFailsOnImpossibleTolerance) {
    const Result r = invoke({"verify", "--tol", "1e-16"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL Schrodinger residual"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
    const Result equal = invoke({"verify", "--alpha", "2", "--beta", "2"});
    EXPECT_EQ(equal.code, 2);
    EXPECT_NE(equal.err.find("singular"), std::string::npos);

    EXPECT_EQ(invoke({"spectrum", "--alpha", "x/y"}).code, 2);
    EXPECT_EQ(invoke({"spectrum", "--alpha", "-1/4"}).code, 2);
    EXPECT_EQ(invoke({"spectrum", "--p", "2", "--q", "4"}).code, 2);
    EXPECT_EQ(invoke({"spectrum", "--format", "xml"}).code, 2);
    EXPECT_EQ(invoke({"export-wavefunction", "--margin", "0.7", "--out", scratch("margin").string()}).code, 2);
    EXPECT_EQ(invoke({"orbit", "--state", "1,2"}).code, 2);
    EXPECT_EQ(invoke({"nonsense"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
}

TEST(Cli, SpectrumLevelsAtKOne) {
    const Result r = invoke({"spectrum", "--alpha", "1", "--beta", "2", "--emax", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 11u);
    EXPECT_EQ(ls[0], "level,m,n,E_over_omega,E");
    // Levels 5, 7, 9, 11 holding 1, 2, 3, 4 states.
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const int level = std::stoi(ls[i].substr(0, ls[i].find(',')));
        ASSERT_LT(level, 4);
        ++counts[level];
        EXPECT_NE(ls[i].find("," + std::to_string(5 + 2 * level) + ","), std::string::npos) << ls[i];
    }
    for (int i = 0; i < 4; ++i) EXPECT_EQ(counts[i], i + 1);
}

TEST(Cli, SpectrumBelowGroundIsHeaderOnly) {
    const Result r = invoke({"spectrum", "--alpha", "1", "--beta", "2", "--emax", "4"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "level,m,n,E_over_omega,E\n");
}

TEST(Cli, RationalRoundTrip) {
    const Result r = invoke({"spectrum", "--alpha", "3/2", "--beta", "7/2", "--emax", "10", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"alpha\": \"3/2\""), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"beta\": \"7/2\""), std::string::npos);
    // Non-reduced input is normalized.
    const Result r2 = invoke({"spectrum", "--alpha", "6/4", "--beta", "7/2", "--emax", "10", "--format", "json"});
    EXPECT_EQ(r.out, r2.out);
}

TEST(Cli, OutputIsDeterministic) {
    const Result a = invoke({"spectrum", "--p", "3", "--q", "2", "--emax", "30"});
    const Result b = invoke({"spectrum", "--p", "3", "--q", "2", "--emax", "30"});
    EXPECT_EQ(a.out, b.out);

    const fs::path d1 = scratch("det1"), d2 = scratch("det2");
    ASSERT_EQ(invoke({"export-wavefunction", "--m", "1", "--n", "2", "--grid", "30", "--out", d1.string()}).code, 0);
    ASSERT_EQ(invoke({"export-wavefunction", "--m", "1", "--n", "2", "--grid", "30", "--out", d2.string()}).code, 0);
    const std::string csv = slurp(d1 / "psi_m1_n2.csv");
    EXPECT_EQ(lines(csv).size(), 30u * 30u + 1u);
    EXPECT_EQ(csv, slurp(d2 / "psi_m1_n2.csv"));
    EXPECT_EQ(slurp(d1 / "psi_m1_n2.json"), slurp(d2 / "psi_m1_n2.json"));
}

TEST(Cli, GroundStateExportHasOneSign) {
    const fs::path d = scratch("ground");
    ASSERT_EQ(invoke({"export-wavefunction", "--m", "0", "--n", "1", "--grid", "25", "--out", d.string()}).code, 0);
    const auto ls = lines(slurp(d / "psi_m0_n1.csv"));
    ASSERT_EQ(ls.size(), 626u);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const double psi = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
        EXPECT_GT(psi, 0.0) << ls[i];
    }
}

TEST(Cli, ConfigFileAndOverride) {
    const fs::path d = scratch("config");
    std::ofstream(d / "run.cfg") << "alpha = 1\nbeta = 2\nemax = 12\n";
    const Result from_file = invoke({"spectrum", "--config", (d / "run.cfg").string()});
    const Result direct = invoke({"spectrum", "--alpha", "1", "--beta", "2", "--emax", "12"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(from_file.out, direct.out);
    const Result overridden = invoke({"spectrum", "--config", (d / "run.cfg").string(), "--emax", "5"});
    EXPECT_EQ(lines(overridden.out).size(), 2u);
}

TEST(Cli, OrbitAtMinimumStaysPut) {
    const fs::path d = scratch("orbit");
    const Result r = invoke({"orbit", "--state", "minimum", "--out", d.string()});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    const auto pos = r.out.find("energy_drift=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LT(std::stod(r.out.substr(pos + 13)), 1e-12);
    const auto ls = lines(slurp(d / "orbit.csv"));
    ASSERT_GT(ls.size(), 2u);
    EXPECT_EQ(ls[0], "t,r,phi,p_r,p_phi,H,L1");
    const auto field = [](const std::string& l, int idx) {
        std::istringstream in(l);
        std::string f;
        for (int i = 0; i <= idx; ++i) std::getline(in, f, ',');
        return std::stod(f);
    };
    const double r0 = field(ls[1], 1);
    for (std::size_t i = 2; i < ls.size(); ++i) EXPECT_NEAR(field(ls[i], 1), r0, 1e-12 * r0);
}

TEST(Cli, OrbitGuardExitsOne) {
    const Result r = invoke({"orbit", "--dt", "2", "--out", scratch("guard").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL orbit"), std::string::npos);
}
