#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgdecomp/grid.hpp"
#include "kgdecomp/potentials.hpp"

namespace kgd {

/// Superpotential W(r) = -(1/sqrt(2m)) f'(r)/f(r) of some amplitude f.
///
/// The derivative and antiderivative are optional.  Without an analytic
/// derivative the superpotential is "numeric" and residuals differentiate it
/// by central differences on the grid.  An antiderivative, when present, lets
/// `wavefunction` reconstruct the amplitude exactly instead of by quadrature.
/// All callables must be stateless.
class Superpotential {
  public:
    Superpotential(std::string label, RadialFunction value, RadialFunction derivative = {},
                   RadialFunction antiderivative = {});

    static Superpotential constant(double kappa);

    /// Node values on `grid`, no analytic derivative.
    static Superpotential sampled(std::string label, const RadialGrid& grid, std::vector<double> values);

    /// The same function with derivative and antiderivative dropped.
    Superpotential numeric() const;

    const std::string& label() const noexcept { return label_; }
    bool has_derivative() const noexcept { return static_cast<bool>(derivative_); }
    bool has_antiderivative() const noexcept { return static_cast<bool>(antiderivative_); }

    double operator()(double r) const { return value_(r); }
    double derivative(double r) const;
    double antiderivative(double r) const;

    std::vector<double> sample(const RadialGrid& grid) const;

    /// W' on the grid: analytic when available, else second-order central
    /// differences with one-sided three-point stencils at the ends.
    std::vector<double> sample_derivative(const RadialGrid& grid) const;

  private:
    std::string label_;
    RadialFunction value_;
    RadialFunction derivative_;
    RadialFunction antiderivative_;
};

struct ResidualReport {
    double sup_norm = 0.0;
    double argmax_r = 0.0;
    std::vector<double> per_node;  // empty unless requested
};

/// W^2 - W'/sqrt(2m) - (U - eps) at every node.
ResidualReport residual_nonrel(const Superpotential& w, const RadialFunction& u, double eps, double m,
                               const RadialGrid& grid, bool keep_per_node = false);

/// dW^2 - dW'/sqrt(2m) + 2 W dW - (dU - deps) at every node.
ResidualReport residual_rel(const Superpotential& w, const Superpotential& dw, const RadialFunction& du,
                            double deps, double m, const RadialGrid& grid, bool keep_per_node = false);

/// -sqrt(2m) * integral_{r_min}^{r} W, at every node.  Exact when W has an
/// antiderivative, cumulative trapezoid otherwise.
std::vector<double> log_amplitude(const Superpotential& w, double m, const RadialGrid& grid);

/// exp(log_amplitude), rescaled so the largest sample is 1.  Throws overflow
/// when the unscaled exponent leaves the double range.
std::vector<double> wavefunction(const Superpotential& w, double m, const RadialGrid& grid);

/// exp(log_amplitude) without rescaling.  Entries may underflow to zero.
std::vector<double> raw_wavefunction(const Superpotential& w, double m, const RadialGrid& grid);

struct Combined {
    std::vector<double> samples;
    bool degenerate = false;  // product vanished identically; rescale skipped
};

/// Pointwise chi*phi rescaled to max-abs 1.
Combined combine(std::span<const double> chi, std::span<const double> phi);

/// Divides by the largest absolute value in place; returns that value.
double rescale_max_abs(std::vector<double>& values);

}  // namespace kgd
