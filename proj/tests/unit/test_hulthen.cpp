#include <cmath>
#include <vector>

#include "kgdecomp/hulthen.hpp"
#include "support.hpp"

using namespace kgd;
using namespace kgd::hulthen;

namespace {

// Largest admissible root of E^2 - m^2 + (p + q E)^2 / (8 m alpha^2) = 0,
// where p + q E = 2 m U0/(delta+1) - alpha^2 with U0 = 2(m s0 + E v0).
double quadratic_ground(double m, const HulthenPair& pair, double delta_value) {
    const double c1 = 2.0 * m / (delta_value + 1.0);
    const double p = 2.0 * c1 * m * pair.s0 - pair.alpha * pair.alpha;
    const double q = 2.0 * c1 * pair.v0;
    const double d = 8.0 * m * pair.alpha * pair.alpha;
    const double a = 1.0 + q * q / d;
    const double b = 2.0 * p * q / d;
    const double c = p * p / d - m * m;
    const double disc = std::sqrt(b * b - 4.0 * a * c);
    double best = NAN;
    for (double e : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)}) {
        if (e > 0.0 && e < m && p + q * e > 0.0 && (std::isnan(best) || e > best)) {
            best = e;
        }
    }
    return best;
}

}  // namespace

TEST(HulthenCoefficients, Examples) {
    // A = sqrt(m/2)/alpha (U0 - alpha^2/2m)
    EXPECT_DOUBLE_EQ(coefficient_A(2.0, 1.0, 1.25), 1.0);
    EXPECT_DOUBLE_EQ(nonrel_ground(2.0, 1.0, 1.25).eps, -1.0);
    EXPECT_ERRC(nonrel_ground(2.0, 1.0, 0.25), Errc::no_bound_state);
    EXPECT_ERRC(nonrel_ground(0.0, 1.0, 1.0), Errc::invalid_argument);
    // B = -sqrt(m/2) delta U0 / (alpha (delta+1))
    EXPECT_DOUBLE_EQ(coefficient_B(2.0, 1.0, 3.0, 1.0), -1.5);
    EXPECT_EQ(coefficient_B(2.0, 1.0, 3.0, 0.0), 0.0);
}

TEST(HulthenDelta, Examples) {
    EXPECT_EQ(delta(1.0, 1.0, 0.7, 0.7), 0.0);
    EXPECT_EQ(delta(1.0, 1.0, 0.7, -0.7), 0.0);
    // 2 m (s0^2 - v0^2)/alpha^2 = 2 gives -1/2 + sqrt(9/4) = 1.
    EXPECT_DOUBLE_EQ(delta(1.0, 1.0, 1.25, 0.75), 1.0);
    // 2 m (s0^2 - v0^2)/alpha^2 = 6 gives -1/2 + 5/2 = 2.
    EXPECT_DOUBLE_EQ(delta(3.0, 1.0, 1.0, 0.0), 2.0);
    EXPECT_ERRC(delta(1.0, 1.0, 0.5, 0.6), Errc::vector_dominates);
}

TEST(HulthenDelta, SmallSplittingHasNoCancellation) {
    // delta = x - x^2 + 2x^3 - ... for x = 2 m (s0^2 - v0^2)/alpha^2.
    const double s0 = 1.0;
    const double v0 = 1.0 - 1e-9;
    const double x = 2.0 * (s0 - v0) * (s0 + v0);
    EXPECT_LT(testing_support::rel_diff(delta(1.0, 1.0, s0, v0), x - x * x), 1e-15);
}

TEST(HulthenRelCorrection, ExpandedFormAgrees) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double m = 0.25 + 1.75 * u01(rng);
        const double alpha = 0.2 + 2.8 * u01(rng);
        const double u0 = 5.0 * u01(rng);
        const double d = 3.0 * u01(rng);
        const auto rc = rel_correction(m, alpha, u0, d);
        const double scale = std::max(std::abs(rc.deps), 1e-12);
        EXPECT_LE(std::abs(rc.deps - rc.deps_expanded) / scale, 1e-11) << m << ' ' << alpha << ' ' << u0 << ' ' << d;
    }
    EXPECT_ERRC(rel_correction(1.0, 1.0, 1.0, -0.5), Errc::invalid_argument);
}

TEST(HulthenSolve, WorkedExample) {
    const auto s = solve_ground(1.0, {1.25, 0.75, 1.0});
    EXPECT_NEAR(s.E, 23.0 / 41.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.delta, 1.0);
    EXPECT_NEAR(s.U0, 2.0 * (1.25 + 0.75 * s.E), 1e-15);
    EXPECT_NEAR(s.E * s.E - 1.0, s.eps + s.deps, 1e-12);
    EXPECT_LE(s.residual_nr, 1e-8);
    EXPECT_LE(s.residual_rel, 1e-8);
    EXPECT_LT(s.f_at_zero * s.f_at_mass, 0.0);
    ASSERT_EQ(s.roots.size(), 1u);
    EXPECT_EQ(s.sign_check.passing_sign, -1);
    EXPECT_LE(s.sign_check.residual_minus, 1e-8);
    EXPECT_GT(s.sign_check.residual_plus, 1e-3);
}

TEST(HulthenSolve, EqualScalarVectorHasNoCorrection) {
    const double m = 1.0;
    const HulthenPair pair{0.75, 0.75, 1.0};
    const auto s = solve_ground(m, pair);
    EXPECT_EQ(s.delta, 0.0);
    EXPECT_EQ(s.deps, 0.0);
    EXPECT_EQ(s.B, 0.0);
    // With U0 = 1.5(1 + E) the energy equation reduces to 17E^2 + 12E - 4 = 0.
    EXPECT_NEAR(s.E, (-12.0 + std::sqrt(416.0)) / 34.0, 1e-12);
    const auto phi = wavefunction(s.dW(), m, RadialGrid(0.01, 10.0, 200));
    for (double v : phi) {
        EXPECT_EQ(v, 1.0);
    }
}

TEST(HulthenSolve, MatchesQuadraticOracle) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int solved = 0;
    for (int i = 0; i < 300; ++i) {
        const double m = 0.25 + 1.75 * u01(rng);
        const double alpha = 0.2 + 2.8 * u01(rng);
        const double s0 = 3.0 * u01(rng);
        const double v0 = s0 * (2.0 * u01(rng) - 1.0);
        const HulthenPair pair{s0, v0, alpha};
        const double d = delta(m, alpha, s0, v0);
        const double expected = quadratic_ground(m, pair, d);
        SolveOptions opts;
        opts.compute_residuals = false;
        try {
            const auto s = solve_ground(m, pair, opts);
            ASSERT_FALSE(std::isnan(expected)) << m << ' ' << alpha << ' ' << s0 << ' ' << v0;
            EXPECT_LT(testing_support::rel_diff(s.E, expected), 1e-11);
            EXPECT_LE(std::abs(energy_equation(m, pair, d, s.E)), 1e-12);
            EXPECT_GT(s.A, 0.0);
            EXPECT_GT(s.A + s.B, 0.0);
            ++solved;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::no_bound_state);
        }
    }
    EXPECT_GT(solved, 150);
}

TEST(HulthenSolve, Failures) {
    EXPECT_ERRC(solve_ground(1.0, {0.1, 0.0, 1.0}), Errc::no_bound_state);
    EXPECT_ERRC(solve_ground(1.0, {0.5, 0.9, 1.0}), Errc::vector_dominates);
    EXPECT_ERRC(solve_ground(1.0, {NAN, 0.0, 1.0}), Errc::invalid_argument);
    EXPECT_ERRC(solve_ground(1.0, {1.0, 0.0, -1.0}), Errc::invalid_argument);
}

TEST(HulthenClosedForms, ProductOfFactorsIsTheFullForm) {
    const double m = 1.0;
    const double alpha = 1.0;
    const double u0 = 2.0 * (1.25 + 0.75 * 23.0 / 41.0);
    const double a = coefficient_A(m, alpha, u0);
    const double b = coefficient_B(m, alpha, u0, 1.0);
    for (double r : {0.01, 0.5, 2.0, 7.0}) {
        const double product = chi_closed(m, alpha, a, r) * phi_closed(m, alpha, 1.0, b, r);
        EXPECT_LT(testing_support::rel_diff(product, psi_closed(m, alpha, u0, 1.0, -1, r)), 1e-13) << r;
    }
}
