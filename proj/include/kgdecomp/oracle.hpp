#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kgdecomp/grid.hpp"
#include "kgdecomp/potentials.hpp"

namespace kgd::oracle {

/// Symmetric tridiagonal matrix.
struct TridiagonalSystem {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size n - 1

    void validate() const;
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const TridiagonalSystem& sys, double x);

/// The k smallest eigenvalues in ascending order, each located by bisection
/// on the Sturm count to relative tolerance 1e-12.
std::vector<double> eigen_smallest(const TridiagonalSystem& sys, std::size_t k);

/// Eigenvalue with zero-based `index`, bisecting inside [lo, hi].  The
/// bracket is widened until it contains the eigenvalue.
double eigenvalue_at(const TridiagonalSystem& sys, std::size_t index, double lo, double hi);

struct OracleResult {
    std::vector<double> eigenvalues;  // ascending; E^2 - m^2 for Klein-Gordon
    std::vector<double> energies;     // Klein-Gordon only
    int iterations = 0;
    RadialGrid grid_used;
    bool converged = false;
};

/// Second-order finite differences for -u'' + U u on the grid nodes.  The
/// amplitude vanishes one spacing outside each end of the grid, so a grid
/// built with RadialGrid::from_origin has its inner wall at r = 0.
TridiagonalSystem discretize(const RadialFunction& potential, const RadialGrid& grid);

/// k lowest eigenvalues of -u'' + U u = eps u.
OracleResult schrodinger_fd(const RadialFunction& potential, const RadialGrid& grid, std::size_t k);

struct KleinGordonOptions {
    double damping = 0.5;
    double tolerance = 1e-10;
    int max_iterations = 500;
    /// Defaults to m (1 - 1e-3).
    std::optional<double> initial_energy;
};

/// Bound states of -psi'' + (m + S)^2 psi = (E - V)^2 psi, solved as the
/// linear problem -psi'' + [2mS + S^2 - V^2 + 2EV] psi = (E^2 - m^2) psi with
/// E updated by damped fixed-point iteration per state.
OracleResult kleingordon_fd(const PotentialSpec& spec, double m, const RadialGrid& grid, std::size_t k,
                            const KleinGordonOptions& options = {});

/// Box size 40/kappa with kappa = sqrt(m^2 - E^2); 40 when no estimate is
/// available or the estimate is not bound.
double default_box(double m, std::optional<double> energy_estimate);

}  // namespace kgd::oracle
