#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "kgdecomp/grid.hpp"

namespace kgd {

/// Rest mass in natural units (hbar = c = 1).
struct PhysParams {
    double m = 1.0;

    /// Throws invalid_argument unless m is finite and positive.
    void validate() const;
};

/// S(r) = -s0/(e^{alpha r} - 1), V(r) = -v0/(e^{alpha r} - 1).
struct HulthenPair {
    double s0 = 0.0;
    double v0 = 0.0;
    double alpha = 1.0;
};

/// S(r) = s0/r + s1 r + s2 r^2, V(r) = v0/r + v1 r + v2 r^2.
struct PowerSeriesPair {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    double v0 = 0.0, v1 = 0.0, v2 = 0.0;
};

/// Potentials known only at grid nodes; evaluated by linear interpolation.
class SampledPair {
  public:
    SampledPair(RadialGrid grid, std::vector<double> s, std::vector<double> v);

    const RadialGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& s() const noexcept { return s_; }
    const std::vector<double>& v() const noexcept { return v_; }

  private:
    RadialGrid grid_;
    std::vector<double> s_;
    std::vector<double> v_;
};

using PotentialSpec = std::variant<HulthenPair, PowerSeriesPair, SampledPair>;

struct ScalarVector {
    double s;
    double v;
};

/// Radial function r -> value.  Used for effective potentials and sources.
using RadialFunction = std::function<double(double)>;

/// 1/(e^{alpha r} - 1), with a short series when alpha*r < 1e-4.
double hulthen_screen(double alpha, double r);

ScalarVector eval(const PotentialSpec& spec, double r);

/// U(r) = 2(m S(r) + E V(r)): the non-relativistic effective potential.
double nonrel_strength(const PotentialSpec& spec, const PhysParams& params, double energy, double r);

/// S(r)^2 - V(r)^2: the relativistic remainder.
double rel_strength(const PotentialSpec& spec, double r);

/// True when the vector coupling vanishes identically.
bool vector_free(const PotentialSpec& spec);

}  // namespace kgd
