#include "kgdecomp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kgdecomp/errors.hpp"

namespace kgd::oracle {

namespace {

constexpr double kRelativeTolerance = 4.0 * std::numeric_limits<double>::epsilon();
constexpr int kMaxBisections = 2000;

std::pair<double, double> gershgorin(const TridiagonalSystem& sys) {
    const std::size_t n = sys.diagonal.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(sys.off_diagonal[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(sys.off_diagonal[i]);
        }
        lo = std::min(lo, sys.diagonal[i] - radius);
        hi = std::max(hi, sys.diagonal[i] + radius);
    }
    return {lo, hi};
}

}  // namespace

void TridiagonalSystem::validate() const {
    if (diagonal.empty()) {
        fail(Errc::invalid_argument, "tridiagonal system is empty");
    }
    if (off_diagonal.size() + 1 != diagonal.size()) {
        fail(Errc::length_mismatch, "off-diagonal must have n - 1 entries");
    }
    for (double d : diagonal) {
        if (!std::isfinite(d)) {
            fail(Errc::non_finite_value, "tridiagonal diagonal is not finite");
        }
    }
    for (double e : off_diagonal) {
        if (!std::isfinite(e)) {
            fail(Errc::non_finite_value, "tridiagonal off-diagonal is not finite");
        }
    }
}

std::size_t sturm_count(const TridiagonalSystem& sys, double x) {
    constexpr double pivmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    const auto& d = sys.diagonal;
    const auto& e = sys.off_diagonal;
    std::size_t count = 0;
    double q = d[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
        if (i + 1 == d.size()) {
            break;
        }
        q = (d[i + 1] - x) - e[i] * e[i] / q;
    }
    return count;
}

double eigenvalue_at(const TridiagonalSystem& sys, std::size_t index, double lo, double hi) {
    if (index >= sys.diagonal.size()) {
        fail(Errc::invalid_argument, "eigenvalue index out of range");
    }
    if (!(hi > lo)) {
        std::swap(lo, hi);
        hi = std::max(hi, lo + 1e-300);
    }
    double step = std::max(hi - lo, 1e-12);
    while (sturm_count(sys, lo) > index) {
        lo -= step;
        step *= 2.0;
    }
    step = std::max(hi - lo, 1e-12);
    while (sturm_count(sys, hi) <= index) {
        hi += step;
        step *= 2.0;
    }
    for (int it = 0; it < kMaxBisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kRelativeTolerance * std::max(std::abs(lo), std::abs(hi)) || mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(sys, mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigen_smallest(const TridiagonalSystem& sys, std::size_t k) {
    sys.validate();
    if (k > sys.diagonal.size()) {
        fail(Errc::invalid_argument, "requested more eigenvalues than the matrix dimension");
    }
    const auto [lo, hi] = gershgorin(sys);
    std::vector<double> out;
    out.reserve(k);
    double floor = lo;
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(eigenvalue_at(sys, i, floor, hi));
        floor = out.back();
    }
    return out;
}

TridiagonalSystem discretize(const RadialFunction& potential, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    TridiagonalSystem sys;
    sys.diagonal.resize(n);
    sys.off_diagonal.assign(n - 1, -inv_h2);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = potential(grid[i]);
        if (!std::isfinite(u)) {
            fail(Errc::non_finite_potential, "potential is not finite at r = " + std::to_string(grid[i]));
        }
        sys.diagonal[i] = 2.0 * inv_h2 + u;
    }
    return sys;
}

OracleResult schrodinger_fd(const RadialFunction& potential, const RadialGrid& grid, std::size_t k) {
    const auto sys = discretize(potential, grid);
    OracleResult out{eigen_smallest(sys, k), {}, 1, grid, true};
    return out;
}

OracleResult kleingordon_fd(const PotentialSpec& spec, double m, const RadialGrid& grid, std::size_t k,
                            const KleinGordonOptions& options) {
    if (!std::isfinite(m) || m <= 0.0) {
        fail(Errc::invalid_argument, "mass must be finite and positive");
    }
    if (k == 0 || k > grid.size()) {
        fail(Errc::invalid_argument, "state count must lie in [1, grid size]");
    }
    if (!(options.damping > 0.0 && options.damping <= 1.0)) {
        fail(Errc::invalid_argument, "damping must lie in (0, 1]");
    }
    const std::size_t n = grid.size();
    std::vector<double> vector_part(n);
    const TridiagonalSystem base = discretize(
        [&](double r) {
            const auto [s, v] = eval(spec, r);
            return 2.0 * m * s + s * s - v * v;
        },
        grid);
    for (std::size_t i = 0; i < n; ++i) {
        vector_part[i] = 2.0 * eval(spec, grid[i]).v;
        if (!std::isfinite(vector_part[i])) {
            fail(Errc::non_finite_potential, "vector potential is not finite at r = " + std::to_string(grid[i]));
        }
    }

    OracleResult out{{}, {}, 0, grid, true};
    const auto [g_lo, g_hi] = gershgorin(base);
    const bool linear = vector_free(spec);
    TridiagonalSystem sys = base;

    auto to_energy = [&](double lambda) {
        const double e2 = m * m + lambda;
        if (e2 < 0.0) {
            fail(Errc::complex_energy, "m^2 + lambda = " + std::to_string(e2) + " < 0: no bound state");
        }
        return std::sqrt(e2);
    };

    for (std::size_t state = 0; state < k; ++state) {
        if (linear) {
            const double lambda = eigenvalue_at(base, state, g_lo, g_hi);
            out.eigenvalues.push_back(lambda);
            out.energies.push_back(to_energy(lambda));
            out.iterations = std::max(out.iterations, 1);
            continue;
        }
        double energy = options.initial_energy.value_or(m * (1.0 - 1e-3));
        double lambda = std::nan("");
        bool done = false;
        int it = 0;
        while (it < options.max_iterations) {
            ++it;
            for (std::size_t i = 0; i < n; ++i) {
                sys.diagonal[i] = base.diagonal[i] + energy * vector_part[i];
            }
            if (std::isfinite(lambda)) {
                const double pad = std::max(1e-3 * std::abs(lambda), 1e-8);
                lambda = eigenvalue_at(sys, state, lambda - pad, lambda + pad);
            } else {
                const auto [lo, hi] = gershgorin(sys);
                lambda = eigenvalue_at(sys, state, lo, hi);
            }
            const double next = (1.0 - options.damping) * energy + options.damping * to_energy(lambda);
            const double change = std::abs(next - energy);
            energy = next;
            if (change < options.tolerance) {
                done = true;
                break;
            }
        }
        out.iterations = std::max(out.iterations, it);
        if (!done) {
            fail(Errc::no_convergence, "Klein-Gordon fixed point for state " + std::to_string(state) +
                                           " did not converge in " + std::to_string(options.max_iterations) +
                                           " iterations");
        }
        out.eigenvalues.push_back(energy * energy - m * m);
        out.energies.push_back(energy);
    }
    return out;
}

double default_box(double m, std::optional<double> energy_estimate) {
    if (energy_estimate && std::abs(*energy_estimate) < m) {
        const double kappa = std::sqrt(m * m - *energy_estimate * *energy_estimate);
        if (kappa > 0.0) {
            return 40.0 / kappa;
        }
    }
    return 40.0;
}

}  // namespace kgd::oracle
