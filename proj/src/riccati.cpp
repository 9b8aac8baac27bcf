#include "kgdecomp/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "kgdecomp/errors.hpp"

namespace kgd {

Superpotential::Superpotential(std::string label, RadialFunction value, RadialFunction derivative,
                               RadialFunction antiderivative)
    : label_(std::move(label)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      antiderivative_(std::move(antiderivative)) {
    if (!value_) {
        fail(Errc::invalid_argument, "superpotential needs a value function");
    }
}

Superpotential Superpotential::constant(double kappa) {
    return Superpotential(
        "constant", [kappa](double) { return kappa; }, [](double) { return 0.0; },
        [kappa](double r) { return kappa * r; });
}

Superpotential Superpotential::sampled(std::string label, const RadialGrid& grid, std::vector<double> values) {
    if (values.size() != grid.size()) {
        fail(Errc::length_mismatch, "sampled superpotential needs one value per node");
    }
    auto data = std::make_shared<const std::pair<RadialGrid, std::vector<double>>>(grid, std::move(values));
    return Superpotential(std::move(label), [data](double r) {
        const auto& [g, v] = *data;
        const std::size_t i = g.locate(r);
        const double t = (r - g[i]) / g.h();
        return v[i] + t * (v[i + 1] - v[i]);
    });
}

Superpotential Superpotential::numeric() const {
    return Superpotential(label_, value_);
}

double Superpotential::derivative(double r) const {
    if (!derivative_) {
        fail(Errc::invalid_argument, "superpotential '" + label_ + "' has no analytic derivative");
    }
    return derivative_(r);
}

double Superpotential::antiderivative(double r) const {
    if (!antiderivative_) {
        fail(Errc::invalid_argument, "superpotential '" + label_ + "' has no antiderivative");
    }
    return antiderivative_(r);
}

std::vector<double> Superpotential::sample(const RadialGrid& grid) const {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = value_(grid[i]);
    }
    return out;
}

std::vector<double> Superpotential::sample_derivative(const RadialGrid& grid) const {
    const std::size_t n = grid.size();
    std::vector<double> out(n);
    if (derivative_) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = derivative_(grid[i]);
        }
        return out;
    }
    const auto w = sample(grid);
    const double h = grid.h();
    out[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (w[i + 1] - w[i - 1]) / (2.0 * h);
    }
    out[n - 1] = (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) / (2.0 * h);
    return out;
}

namespace {

void check_mass(double m) {
    if (!std::isfinite(m) || m <= 0.0) {
        fail(Errc::invalid_argument, "mass must be finite and positive");
    }
}

template <class Term>
ResidualReport collect(const RadialGrid& grid, bool keep, Term&& term) {
    ResidualReport report;
    if (keep) {
        report.per_node.resize(grid.size());
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double value = term(i);
        if (!std::isfinite(value)) {
            fail(Errc::non_finite_value, "residual is not finite at r = " + std::to_string(grid[i]));
        }
        if (keep) {
            report.per_node[i] = value;
        }
        if (std::abs(value) > report.sup_norm) {
            report.sup_norm = std::abs(value);
            report.argmax_r = grid[i];
        }
    }
    if (report.sup_norm == 0.0) {
        report.argmax_r = grid[0];
    }
    return report;
}

}  // namespace

ResidualReport residual_nonrel(const Superpotential& w, const RadialFunction& u, double eps, double m,
                               const RadialGrid& grid, bool keep_per_node) {
    check_mass(m);
    const double inv_root = 1.0 / std::sqrt(2.0 * m);
    const auto wv = w.sample(grid);
    const auto dw = w.sample_derivative(grid);
    return collect(grid, keep_per_node, [&](std::size_t i) {
        // Extended precision so the sum of large, nearly cancelling terms adds
        // no rounding of its own.
        using L = long double;
        const L w = wv[i];
        return static_cast<double>(w * w - L(dw[i]) * L(inv_root) - (L(u(grid[i])) - L(eps)));
    });
}

ResidualReport residual_rel(const Superpotential& w, const Superpotential& dw, const RadialFunction& du,
                            double deps, double m, const RadialGrid& grid, bool keep_per_node) {
    check_mass(m);
    const double inv_root = 1.0 / std::sqrt(2.0 * m);
    const auto wv = w.sample(grid);
    const auto dv = dw.sample(grid);
    const auto ddv = dw.sample_derivative(grid);
    return collect(grid, keep_per_node, [&](std::size_t i) {
        using L = long double;
        const L d = dv[i];
        return static_cast<double>(d * d - L(ddv[i]) * L(inv_root) + 2 * L(wv[i]) * d - (L(du(grid[i])) - L(deps)));
    });
}

std::vector<double> log_amplitude(const Superpotential& w, double m, const RadialGrid& grid) {
    check_mass(m);
    const double root = std::sqrt(2.0 * m);
    std::vector<double> out(grid.size());
    if (w.has_antiderivative()) {
        const double base = w.antiderivative(grid[0]);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] = -root * (w.antiderivative(grid[i]) - base);
        }
    } else {
        const auto integral = cumulative_trapezoid(w.sample(grid), grid.h());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] = -root * integral[i];
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::isnan(out[i])) {
            fail(Errc::non_finite_value, "superpotential integral is NaN at r = " + std::to_string(grid[i]));
        }
    }
    return out;
}

namespace {

const double kMaxExponent = std::log(std::numeric_limits<double>::max());

void check_exponent(std::span<const double> log_amp, const RadialGrid& grid) {
    for (std::size_t i = 0; i < log_amp.size(); ++i) {
        if (!(log_amp[i] < kMaxExponent)) {
            fail(Errc::overflow, "amplitude exponent " + std::to_string(log_amp[i]) + " at r = " +
                                     std::to_string(grid[i]) + " exceeds the double range");
        }
    }
}

}  // namespace

std::vector<double> wavefunction(const Superpotential& w, double m, const RadialGrid& grid) {
    const auto log_amp = log_amplitude(w, m, grid);
    check_exponent(log_amp, grid);
    const double peak = *std::max_element(log_amp.begin(), log_amp.end());
    std::vector<double> out(log_amp.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::exp(log_amp[i] - peak);
    }
    return out;
}

std::vector<double> raw_wavefunction(const Superpotential& w, double m, const RadialGrid& grid) {
    auto out = log_amplitude(w, m, grid);
    check_exponent(out, grid);
    for (double& v : out) {
        v = std::exp(v);
    }
    return out;
}

double rescale_max_abs(std::vector<double>& values) {
    double peak = 0.0;
    for (double v : values) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak > 0.0) {
        for (double& v : values) {
            v /= peak;
        }
    }
    return peak;
}

Combined combine(std::span<const double> chi, std::span<const double> phi) {
    if (chi.size() != phi.size()) {
        fail(Errc::length_mismatch, "chi has " + std::to_string(chi.size()) + " samples, phi has " +
                                        std::to_string(phi.size()));
    }
    Combined out;
    out.samples.resize(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i) {
        out.samples[i] = chi[i] * phi[i];
    }
    out.degenerate = rescale_max_abs(out.samples) == 0.0;
    return out;
}

}  // namespace kgd
