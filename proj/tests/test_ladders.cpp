#include "xsuperint/errors.hpp"
#include "xsuperint/ladders.hpp"
#include "xsuperint/operators.hpp"
#include "xsuperint/poly_core.hpp"

#include <gtest/gtest.h>

using namespace xsuperint;

namespace {

const Rational kOne(1);
const Rational kThree(3);

struct Pair {
    Rational alpha;
    Rational beta;
};
const std::vector<Pair> kPairs = {{Rational(1), Rational(3)}, {Rational(1, 2), Rational(5, 2)},
                                  {Rational(2), Rational(7, 2)}};

// K_s = (1+s) d + eps/2 - s(1+s)/(2y), written out by hand.
EnergyOp k_closed_form(const Rational& s) {
    const Rational one(1);
    const DiffOp eps0({RatFunc(Poly(-s * (one + s) / Rational(2)), Poly::x()), RatFunc(one + s)});
    return EnergyOp({eps0, DiffOp::multiply(RatFunc(Rational(1, 2)))});
}

}  // namespace

TEST(Ladders, DerivedJacobiLadderCoefficients) {
    for (const auto& [a, c] : kPairs)
        for (int n = 0; n <= 6; ++n) {
            const Rational nn(n);
            const RatFunc pn(jacobi_poly(n, a, c));
            const auto up = proportionality(jacobi_raising_derived(nn, a, c).apply(pn), RatFunc(jacobi_poly(n + 1, a, c)));
            ASSERT_TRUE(up.has_value());
            EXPECT_EQ(*up, (nn + Rational(1)) * (nn + a + c + Rational(1)));
            if (n == 0) continue;
            const auto down =
                proportionality(jacobi_lowering_derived(nn, a, c).apply(pn), RatFunc(jacobi_poly(n - 1, a, c)));
            ASSERT_TRUE(down.has_value());
            EXPECT_EQ(*down, (nn + a) * (nn + c));
        }
}

TEST(Ladders, PrintedJacobiLaddersAreFlagged) {
    const auto low = build_jacobi_lowering(2, kOne, kThree);
    EXPECT_EQ(low.printed_verdict, Verdict::Mismatch);
    EXPECT_EQ(low.derived, jacobi_lowering_derived(Rational(2), kOne, kThree));
    const auto up = build_jacobi_raising(2, kOne, kThree);
    EXPECT_EQ(up.printed_verdict, Verdict::Mismatch);
    // Lowering on P_1 lands on a constant.
    const auto c = proportionality(build_jacobi_lowering(1, kOne, kThree).derived.apply(RatFunc(jacobi_poly(1, kOne, kThree))),
                                   RatFunc(1));
    ASSERT_TRUE(c.has_value());
    EXPECT_FALSE(c->is_zero());
}

TEST(Ladders, ForwardOperatorMatchesClosedForm) {
    for (const auto& [a, be] : kPairs) {
        const Rational b = param_b(a, be);
        const Poly x = Poly::x();
        const DiffOp expected({RatFunc(a * (x + Poly((Rational(2) + a + be) / (a - be)))),
                               RatFunc((x - Poly(1)) * (x - Poly(b)))});
        const auto r = build_forward_F(a, be);
        EXPECT_EQ(r.derived, expected);
        EXPECT_EQ(r.printed_verdict, Verdict::Unresolvable);
        EXPECT_FALSE(r.printed.has_value());
    }
    // F applied to P_0 = 1 is a multiple of x + b... of the degree-one basis element.
    const auto F = build_forward_F(kOne, kThree).derived;
    EXPECT_TRUE(proportionality(F.apply(RatFunc(1)), RatFunc(xjacobi_eigen(1, kOne, kThree))).has_value());
}

TEST(Ladders, BackwardOperatorMatchesClosedForm) {
    for (const auto& [a, be] : kPairs) {
        const Rational b = param_b(a, be);
        const Poly x = Poly::x();
        const RatFunc inv(Poly(1), x - Poly(b));
        const DiffOp expected({inv * RatFunc(be), inv * RatFunc(x + Poly(1))});
        const auto r = build_backward_B(a, be);
        EXPECT_EQ(r.derived, expected);
        EXPECT_EQ(r.printed_verdict, Verdict::Mismatch);
    }
    const auto B = build_backward_B(kOne, kThree).derived;
    EXPECT_TRUE(B.apply(RatFunc(xjacobi_eigen(1, kOne, kThree))).is_constant());
}

TEST(Ladders, BackwardForwardFixesTheSpace) {
    const auto F = build_forward_F(kOne, kThree).derived;
    const auto B = build_backward_B(kOne, kThree).derived;
    const DiffOp bf = compose(B, F);
    for (int n = 0; n <= 5; ++n) {
        const RatFunc pn(jacobi_poly(n, Rational(2), Rational(2)));
        const auto c = proportionality(bf.apply(pn), pn);
        ASSERT_TRUE(c.has_value()) << n;
        // -(n+beta+1)/2 * -2(n+alpha) in the printed normalization
        EXPECT_EQ(*c, (Rational(n) + kThree + kOne) * (Rational(n) + kOne)) << n;
    }
}

TEST(Ladders, JActionsMatchStepwiseProducts) {
    for (const auto& [a, be] : kPairs) {
        for (int n = 1; n <= 6; ++n) {
            const Rational nn(n);
            const auto up = j_action(Direction::Plus, n, 1, a, be);
            EXPECT_EQ(up.coefficient, nn * (nn + be) * (nn + a) * (nn + a + be));
            if (n >= 2) {
                const auto down = j_action(Direction::Minus, n, 1, a, be);
                EXPECT_EQ(down.coefficient,
                          (nn + a) * (nn + a - Rational(2)) * (nn + be) * (nn + be - Rational(2)));
            }
        }
        for (int n = 1; n <= 4; ++n) {
            const auto two = j_action(Direction::Plus, n, 2, a, be);
            EXPECT_EQ(two.coefficient, j_action(Direction::Plus, n, 1, a, be).coefficient *
                                           j_action(Direction::Plus, n + 1, 1, a, be).coefficient);
        }
        const auto two = j_action(Direction::Minus, 4, 2, a, be);
        EXPECT_EQ(two.coefficient, j_action(Direction::Minus, 4, 1, a, be).coefficient *
                                       j_action(Direction::Minus, 3, 1, a, be).coefficient);
    }
}

TEST(Ladders, GaugedJActsOnGaugedBasis) {
    // G J_poly G^{-1} equals the gauged builder.
    const DiffOp gauged = build_J(Direction::Plus, 2, kOne, kThree);
    EXPECT_EQ(gauged, gauge_conjugate(j_operator(Direction::Plus, Rational(2), kOne, kThree, false),
                                      angular_gauge(kOne, kThree)));
    EXPECT_THROW(build_J(Direction::Minus, 1, kOne, kThree), OutOfFamilyError);
    EXPECT_THROW(j_action(Direction::Minus, 2, 2, kOne, kThree), OutOfFamilyError);
}

TEST(Ladders, DerivedKMatchesClosedForm) {
    for (const Rational& nu : {Rational(5), Rational(7, 2), Rational(1), Rational(9, 4)}) {
        EXPECT_EQ(build_K(Direction::Plus, nu), k_closed_form(nu)) << nu;
        EXPECT_EQ(build_K(Direction::Minus, nu), k_closed_form(-nu)) << nu;
    }
}

TEST(Ladders, KActionsFollowPrintedCoefficients) {
    for (const Rational& nu : {Rational(5), Rational(7, 2)}) {
        EXPECT_EQ(k_action(Direction::Plus, nu, 0, 1), Rational(0));
        for (int m = 1; m <= 6; ++m) EXPECT_EQ(k_action(Direction::Plus, nu, m, 1), Rational(-1));
        for (int m = 0; m <= 6; ++m)
            EXPECT_EQ(k_action(Direction::Minus, nu, m, 1), -(Rational(m + 1)) * (Rational(m) + nu));
        // two-fold minus branch at m = 0: (1)_2 (kA-1)_2
        EXPECT_EQ(k_action(Direction::Minus, nu, 0, 2), pochhammer(Rational(1), 2) * pochhammer(nu - Rational(1), 2));
        // plus branch walks off the bottom
        EXPECT_EQ(k_action(Direction::Plus, nu, 1, 2), Rational(0));
    }
}

TEST(Ladders, PrintedKFailsOnGroundState) {
    const Rational nu(5);
    const auto at_printed_energy = k_printed_on_ground(Direction::Plus, nu, Rational(2) * (nu + Rational(1)));
    ASSERT_TRUE(at_printed_energy.has_value());
    EXPECT_EQ(*at_printed_energy, -(Rational(1) + nu));
    const auto at_spectrum_energy = k_printed_on_ground(Direction::Plus, nu, nu + Rational(1));
    ASSERT_TRUE(at_spectrum_energy.has_value());
    EXPECT_EQ(*at_spectrum_energy, Rational(-3, 4) * (Rational(1) + nu));
}

TEST(Ladders, XiPreservesEnergy) {
    for (const auto& [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{3, 2}}) {
        const Params params(kOne, kThree, 1.0, p, q);
        for (int m = 0; m <= 4; ++m)
            for (int n = 1; n <= 4; ++n) {
                const QuantumState s{m, n};
                if (m >= p) {
                    const auto a = xi_action(Direction::Plus, s, params);
                    EXPECT_EQ(a.source_energy, a.target_energy);
                    EXPECT_EQ(a.target, (QuantumState{m - p, n + q}));
                    EXPECT_FALSE(a.coefficient.is_zero());
                } else {
                    EXPECT_THROW(xi_action(Direction::Plus, s, params), OutOfFamilyError);
                }
                if (n >= q + 1) {
                    const auto a = xi_action(Direction::Minus, s, params);
                    EXPECT_EQ(a.source_energy, a.target_energy);
                    EXPECT_FALSE(a.coefficient.is_zero());
                } else {
                    EXPECT_THROW(xi_action(Direction::Minus, s, params), OutOfFamilyError);
                }
            }
    }
}

TEST(Ladders, XiCoefficientForKEqualsTwo) {
    const Params params(kOne, kThree, 1.0, 2, 1);
    const auto a = xi_action(Direction::Plus, {2, 1}, params);
    const Rational nu = params.kA(Rational(1));
    const Rational j = j_action(Direction::Plus, 1, 1, kOne, kThree).coefficient;
    EXPECT_EQ(a.coefficient, j * k_action(Direction::Plus, nu, 2, 1) * k_action(Direction::Plus, nu + Rational(2), 1, 1));
    EXPECT_EQ(a.target, (QuantumState{0, 2}));
}

TEST(Ladders, L1NonCommutation) {
    const Params params(kOne, kThree, 1.0, 1, 1);
    const auto a = xi_action(Direction::Plus, {1, 1}, params);
    EXPECT_EQ(l1_noncommutation(Direction::Plus, {1, 1}, params), Rational(24) * a.coefficient);
    for (int m = 1; m <= 3; ++m)
        for (int n = 2; n <= 4; ++n) {
            EXPECT_FALSE(l1_noncommutation(Direction::Plus, {m, n}, params).is_zero());
            EXPECT_FALSE(l1_noncommutation(Direction::Minus, {m, n}, params).is_zero());
        }
}

TEST(Ladders, ParityStructure) {
    const Params params(kOne, kThree, 1.0, 1, 1);
    const auto r = parity_check(8, params);
    EXPECT_TRUE(r.operator_identity);
    EXPECT_TRUE(r.swap);
    EXPECT_TRUE(r.sum_even);
    EXPECT_TRUE(r.difference_over_a_even);
    EXPECT_FALSE(r.plus_alone_even);
    EXPECT_GT(r.coefficient_count, 0u);
    EXPECT_THROW(parity_check(3, params), InterpolationError);
}

TEST(Ladders, ParityStructureAcrossK) {
    for (const auto& [p, q] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{3, 2}}) {
        const Params params(Rational(1, 2), Rational(5, 2), 1.0, p, q);
        const auto r = parity_check(8, params);
        EXPECT_TRUE(r.operator_identity) << p << "/" << q;
        EXPECT_TRUE(r.swap) << p << "/" << q;
        EXPECT_TRUE(r.sum_even) << p << "/" << q;
        EXPECT_TRUE(r.difference_over_a_even) << p << "/" << q;
        EXPECT_FALSE(r.plus_alone_even) << p << "/" << q;
        EXPECT_EQ(r.j_degree, 2 * q);
        EXPECT_EQ(r.k_degree, 2 * p);
    }
}

TEST(Ladders, FormulaVerdicts) {
    const Params params(kOne, kThree, 1.0, 1, 1);
    const auto checks = check_ladder_formulas(params, 6, 6);
    std::map<std::string, FormulaCheck> by;
    for (const auto& c : checks) by[c.name] = c;
    EXPECT_EQ(by.at("F P_n^(a+1,b-1) = (2n-2+2a) P-hat_{n+1}").verdict, Verdict::Mismatch);
    EXPECT_EQ(by.at("B P-hat_{n+1} = -(n+b+1)/2 P_n^(a+1,b-1)").verdict, Verdict::Match);
    EXPECT_EQ(by.at("J_- single step").verdict, Verdict::Normalization);
    EXPECT_EQ(by.at("J_+ single step").ratio, Rational(-1));
    EXPECT_EQ(by.at("J_-^1 (q-fold formula)").verdict, Verdict::Normalization);
    EXPECT_EQ(by.at("K_+ single step").verdict, Verdict::Match);
    EXPECT_EQ(by.at("K_- single step").verdict, Verdict::Match);
    EXPECT_EQ(by.at("K_-^1 (p-fold formula)").verdict, Verdict::Match);
    EXPECT_EQ(by.at("printed K_+ Y_0 = 0 at E = 2 omega (2m+kA+1)").verdict, Verdict::Mismatch);
}
