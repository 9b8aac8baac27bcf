#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kgd {

/// Uniform mesh on a strictly positive radial interval.
///
/// Nodes are r_i = r_min + i*h for i in [0, n).  The origin is excluded
/// because the Coulomb and Hulthen terms are singular there.
class RadialGrid {
  public:
    RadialGrid(double r_min, double r_max, std::size_t n_nodes);

    /// Builds the grid with spacing as close to `h` as the interval allows.
    /// r_max is kept; the realised spacing is (r_max - r_min)/(n - 1).
    static RadialGrid with_spacing(double r_min, double r_max, double h);

    /// Nodes h, 2h, ..., n*h with n*h >= r_max.  The first node sits one
    /// spacing from the origin, which puts the oracle's Dirichlet wall at r = 0.
    static RadialGrid from_origin(double h, double r_max);

    double r_min() const noexcept { return r_min_; }
    double r_max() const noexcept { return r_max_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Index range [lo, lo+1] bracketing r (r must lie inside the grid).
    std::size_t locate(double r) const;

  private:
    double r_min_;
    double r_max_;
    double h_;
    std::vector<double> nodes_;
};

/// Cumulative trapezoid integral from the first node; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double h);

/// Cumulative Simpson integral from the first node; out[0] = 0.  Odd-index
/// entries use the three-point half-panel rule so every node is O(h^4).
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// Composite Simpson over all samples.  An odd panel count closes the last
/// interval with the three-point half-panel rule.
double simpson(std::span<const double> f, double h);

}  // namespace kgd
