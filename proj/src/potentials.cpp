#include "kgdecomp/potentials.hpp"

#include <cmath>
#include <string>

#include "kgdecomp/errors.hpp"

namespace kgd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_radius(double r) {
    if (!(r > 0.0)) {
        fail(Errc::non_positive_radius, "radius must be positive, got " + std::to_string(r));
    }
}

}  // namespace

void PhysParams::validate() const {
    if (!std::isfinite(m) || m <= 0.0) {
        fail(Errc::invalid_argument, "mass must be finite and positive");
    }
}

SampledPair::SampledPair(RadialGrid grid, std::vector<double> s, std::vector<double> v)
    : grid_(std::move(grid)), s_(std::move(s)), v_(std::move(v)) {
    if (s_.size() != grid_.size() || v_.size() != grid_.size()) {
        fail(Errc::length_mismatch, "sampled S and V must have one value per grid node");
    }
    for (std::size_t i = 0; i < s_.size(); ++i) {
        if (!std::isfinite(s_[i]) || !std::isfinite(v_[i])) {
            fail(Errc::non_finite_value, "sampled potential is not finite at node " + std::to_string(i));
        }
    }
}

double hulthen_screen(double alpha, double r) {
    const double x = alpha * r;
    if (x < 1e-4) {
        // e^x - 1 = x(1 + x/2 + x^2/6 + x^3/24 + ...)
        return 1.0 / (x * (1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0))));
    }
    return 1.0 / std::expm1(x);
}

ScalarVector eval(const PotentialSpec& spec, double r) {
    check_radius(r);
    return std::visit(
        overloaded{
            [r](const HulthenPair& p) {
                const double y = hulthen_screen(p.alpha, r);
                return ScalarVector{-p.s0 * y, -p.v0 * y};
            },
            [r](const PowerSeriesPair& p) {
                return ScalarVector{p.s0 / r + p.s1 * r + p.s2 * r * r,
                                    p.v0 / r + p.v1 * r + p.v2 * r * r};
            },
            [r](const SampledPair& p) {
                const auto& g = p.grid();
                const std::size_t i = g.locate(r);
                const double t = (r - g[i]) / g.h();
                return ScalarVector{p.s()[i] + t * (p.s()[i + 1] - p.s()[i]),
                                    p.v()[i] + t * (p.v()[i + 1] - p.v()[i])};
            },
        },
        spec);
}

double nonrel_strength(const PotentialSpec& spec, const PhysParams& params, double energy, double r) {
    const auto [s, v] = eval(spec, r);
    return 2.0 * (params.m * s + energy * v);
}

double rel_strength(const PotentialSpec& spec, double r) {
    const auto [s, v] = eval(spec, r);
    return s * s - v * v;
}

bool vector_free(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [](const HulthenPair& p) { return p.v0 == 0.0; },
                          [](const PowerSeriesPair& p) { return p.v0 == 0.0 && p.v1 == 0.0 && p.v2 == 0.0; },
                          [](const SampledPair& p) {
                              for (double v : p.v()) {
                                  if (v != 0.0) {
                                      return false;
                                  }
                              }
                              return true;
                          },
                      },
                      spec);
}

}  // namespace kgd
