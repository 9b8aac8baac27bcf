#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgdecomp/grid.hpp"
#include "kgdecomp/potentials.hpp"
#include "kgdecomp/riccati.hpp"

namespace kgd::coulombic {

/// a = -2(m s0 + E v0), b = 2(m s1 + E v1), c = 2(m s2 + E v2).
struct Composite {
    double a;
    double b;
    double c;
};

Composite composite(double m, double energy, const PowerSeriesPair& p);

/// (m s1 + E v1) + (m s0 + E v0) sqrt(4m(m s2 + E v2)); zero exactly when
/// the closed-form ground state exists.  Throws negative_oscillator when
/// m s2 + E v2 < 0.
double constraint_residual(double m, double energy, const PowerSeriesPair& p);

/// W = sqrt(m/2) a - 1/(sqrt(2m) r) + sqrt(c) r, with analytic derivative and
/// antiderivative.
Superpotential ground_superpotential(double m, double energy, const PowerSeriesPair& p);

/// eps_n = -b^2/(4c) + sqrt(c)(2n + 3)/sqrt(2m).
double nonrel_energy(int n, double m, double energy, const PowerSeriesPair& p);

/// Same quantity through -2m(m s0 + E v0)^2 + (2n + 3) sqrt(s2 + E v2/m).
double nonrel_energy_expanded(int n, double m, double energy, const PowerSeriesPair& p);

/// How the vector coupling relates to the scalar one, coefficientwise.
enum class Coupling { scalar_only, equal, opposite, mixed };

Coupling classify(const PowerSeriesPair& p);

/// Replaces (s1, v1) so the constraint holds exactly at `energy`, keeping the
/// pair's coupling class.  Throws invalid_argument for mixed pairs and
/// no_bound_state when m + ratio*E vanishes.
PowerSeriesPair with_derived_linear_term(double m, double energy, const PowerSeriesPair& p);

struct SelfConsistentOptions {
    /// Re-derive (s1, v1) from the constraint at every energy iterate instead
    /// of verifying the caller's values.
    bool derive_linear_term = false;
    double damping = 0.5;
    double tolerance = 1e-12;
    int max_iterations = 200;
    std::optional<RadialGrid> verification_grid;
    bool compute_residuals = true;
};

struct OscCoulombSolution {
    int n = 0;
    double m = 0.0;
    PowerSeriesPair pair;  // effective pair (derived linear terms applied)
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double eps = 0.0;
    double E = 0.0;
    double constraint_residual = 0.0;
    double residual_nr = 0.0;
    double g_residual = 0.0;  // E^2 - m^2 - eps_n(E)
    int iterations = 0;
    bool degenerate = false;  // S = -V free-particle limit
    std::vector<std::string> warnings;

    Superpotential W() const;
};

RadialGrid default_verification_grid();

OscCoulombSolution solve_selfconsistent(int n, double m, const PowerSeriesPair& p,
                                        const SelfConsistentOptions& options = {});

}  // namespace kgd::coulombic
