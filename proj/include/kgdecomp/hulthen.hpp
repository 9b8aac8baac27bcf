#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgdecomp/grid.hpp"
#include "kgdecomp/potentials.hpp"
#include "kgdecomp/riccati.hpp"

namespace kgd::hulthen {

/// A = (sqrt(m/2)/alpha) (U0 - alpha^2/2m).  Negative values are returned as
/// is; existence is checked by `nonrel_ground`.
double coefficient_A(double m, double alpha, double u0);

struct NonrelGround {
    double A;
    double eps;  // -A^2
};

/// Non-relativistic ground state; throws no_bound_state unless A > 0.
NonrelGround nonrel_ground(double m, double alpha, double u0);

/// Exponent of the relativistic modification, the non-negative root of
/// delta(delta+1) alpha^2/2m = s0^2 - v0^2.  Throws vector_dominates when
/// s0^2 < v0^2.
double delta(double m, double alpha, double s0, double v0);

/// B = -sqrt(m/2) delta U0 / (alpha (delta + 1)).
double coefficient_B(double m, double alpha, double u0, double delta);

struct RelCorrection {
    double B;
    double deps;           // -B(B + 2A)
    double deps_expanded;  // delta U0 [m U0 (delta+2) - alpha^2 (delta+1)] / (2 alpha^2 (delta+1)^2)
};

RelCorrection rel_correction(double m, double alpha, double u0, double delta);

/// Right-hand side of E^2 - m^2 = eps + deps in closed form.
double total_binding(double m, double alpha, double u0, double delta);

/// f(E) = E^2 - m^2 + [2m U0(E)/(delta+1) - alpha^2]^2 / (8 m alpha^2).
double energy_equation(double m, const HulthenPair& pair, double delta, double energy);

/// U0(E) = 2(m s0 + E v0).
double strength(double m, const HulthenPair& pair, double energy);

/// W = -(alpha/sqrt(2m))/(e^{alpha r} - 1) + A, with analytic derivative and
/// antiderivative.
Superpotential nonrel_superpotential(double m, double alpha, double A);

/// dW = -delta (alpha/sqrt(2m))/(e^{alpha r} - 1) + B.
Superpotential rel_superpotential(double m, double alpha, double delta, double B);

/// Closed-form amplitudes, unnormalised.
double chi_closed(double m, double alpha, double A, double r);
double phi_closed(double m, double alpha, double delta, double B, double r);

/// (1 - e^{-alpha r})^{delta+1} exp(-[m U0/(alpha(delta+1)) + sign*alpha/2] r).
double psi_closed(double m, double alpha, double u0, double delta, int alpha_half_sign, double r);

/// Which sign of the alpha/2 term in the full-wavefunction exponent satisfies
/// the combined Riccati equation for W + dW.
struct ExponentSignCheck {
    double residual_minus;  // exponent -[m U0/(alpha(delta+1)) - alpha/2] r
    double residual_plus;   // exponent -[m U0/(alpha(delta+1)) + alpha/2] r
    int passing_sign;       // -1, +1, or 0 when neither passes
};

struct SolveOptions {
    /// Grid for the residual diagnostics; defaults to [1e-3, 40] with h = 1e-3.
    std::optional<RadialGrid> verification_grid;
    bool compute_residuals = true;
};

struct HulthenSolution {
    double m = 0.0;
    HulthenPair pair;
    double A = 0.0;
    double B = 0.0;
    double delta = 0.0;
    double U0 = 0.0;
    double eps = 0.0;
    double deps = 0.0;
    double deps_expanded = 0.0;
    double E = 0.0;
    double residual_nr = 0.0;
    double residual_rel = 0.0;
    double f_at_zero = 0.0;  // f(0+)
    double f_at_mass = 0.0;  // f(m-)
    std::vector<double> roots;  // every admissible root found in (0, m)
    ExponentSignCheck sign_check{};
    std::vector<std::string> warnings;

    Superpotential W() const;
    Superpotential dW() const;
};

RadialGrid default_verification_grid();

/// Self-consistent ground state of the Hulthen scalar/vector pair.
HulthenSolution solve_ground(double m, const HulthenPair& pair, const SolveOptions& options = {});

ExponentSignCheck check_exponent_sign(const HulthenSolution& solution, const RadialGrid& grid);

}  // namespace kgd::hulthen
