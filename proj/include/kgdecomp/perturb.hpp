#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kgdecomp/grid.hpp"
#include "kgdecomp/potentials.hpp"
#include "kgdecomp/riccati.hpp"

namespace kgd::perturb {

/// One term c * r^power of S^2 - V^2 for a power-series pair.
struct DeltaVTerm {
    int power;
    double coefficient;
};

/// The six terms of S^2 - V^2, powers {-2, 0, 1, 2, 3, 4} in that order.
/// The r^0 term is the constant shift 2(s0 s1 - v0 v1).
std::array<DeltaVTerm, 6> deltaV_terms(const PowerSeriesPair& p);

double eval_terms(std::span<const DeltaVTerm> terms, double r);

RadialFunction as_function(const std::array<DeltaVTerm, 6>& terms);

/// Result of one order of the logarithmic hierarchy
///   2 W dW_k - dW_k'/sqrt(2m) = source_k - deps_k.
struct OrderCorrection {
    double deps = 0.0;
    std::vector<double> dW;          // zero beyond valid_end
    std::size_t valid_end = 0;       // nodes [valid_end, n) have chi^2 < 1e-300
    double solvability = 0.0;        // |int chi^2 (source - deps)| / int chi^2
    double residual = 0.0;           // sup-norm of the order equation where chi^2/max >= 1e-14
    bool tail_converged = true;      // chi^2(r_max) max|source| < 1e-14 int chi^2
};

/// Solves one order given chi^2 samples (any overall scale), the base
/// superpotential and the source samples.  Integrals run from the origin:
/// the segment [0, r_min] is closed by extrapolating the integrand
/// quadratically from the first three nodes.
OrderCorrection order_correction(std::span<const double> chi2, const Superpotential& w,
                                 std::span<const double> source, double m, const RadialGrid& grid);

struct PerturbationOrder {
    int k;
    double deps;
    std::vector<double> dW;
};

struct PerturbationSeries {
    RadialGrid grid;
    std::vector<double> chi;  // base amplitude, max-abs 1
    std::vector<PerturbationOrder> orders;
    double lambda = 1.0;
    std::size_t valid_end = 0;
    std::vector<std::string> warnings;

    /// sum_k lambda^k deps_k over the first `max_order` orders (all when 0).
    double energy_shift(double lambda_value, std::size_t max_order = 0) const;
    double energy_shift() const { return energy_shift(lambda); }
};

constexpr int kMaxOrder = 3;

/// Chains `order_correction` for k = 1..K.  `delta_v_by_order[k-1]` is
/// Delta V_k; missing entries are zero.  The base amplitude is rebuilt from
/// `w`; if its tail is not negligible at r_max the box is doubled up to four
/// times before failing with non_normalizable_base.
PerturbationSeries run_series(const Superpotential& w, std::span<const RadialFunction> delta_v_by_order, int K,
                              double m, const RadialGrid& grid, double lambda = 1.0);

/// Whole of S^2 - V^2 at first order.
PerturbationSeries run_series(const Superpotential& w, const PowerSeriesPair& p, int K, double m,
                              const RadialGrid& grid, double lambda = 1.0);

/// phi = exp(-sqrt(2m) * integral sum_k lambda^k dW_k), rescaled to max-abs 1.
std::vector<double> corrected_wavefunction(const PerturbationSeries& series, double m);

}  // namespace kgd::perturb
