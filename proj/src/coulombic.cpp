#include "kgdecomp/coulombic.hpp"

#include <cmath>
#include <sstream>

#include "kgdecomp/errors.hpp"

namespace kgd::coulombic {

namespace {

constexpr double kConstraintTolerance = 1e-8;
constexpr double kRootConstraintTolerance = 1e-10;

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_mass(double m) {
    if (!std::isfinite(m) || m <= 0.0) {
        fail(Errc::invalid_argument, "mass must be finite and positive");
    }
}

void check_finite(const PowerSeriesPair& p) {
    for (double x : {p.s0, p.s1, p.s2, p.v0, p.v1, p.v2}) {
        if (!std::isfinite(x)) {
            fail(Errc::invalid_argument, "power-series coefficients must be finite");
        }
    }
}

double formula(int n, double m, const Composite& k) {
    return -k.b * k.b / (4.0 * k.c) + std::sqrt(k.c) * (2.0 * n + 3.0) / std::sqrt(2.0 * m);
}

void require_closed_form(double m, double energy, const PowerSeriesPair& p, const Composite& k) {
    if (!(k.c > 0.0)) {
        fail(Errc::negative_oscillator, "c = 2(m s2 + E v2) = " + format_number(k.c) + " is not positive");
    }
    const double res = constraint_residual(m, energy, p);
    if (std::abs(res) > kConstraintTolerance) {
        fail(Errc::constraint_violated, "constraint residual " + format_number(res) + " at E = " +
                                            format_number(energy));
    }
}

double ratio(Coupling c) {
    switch (c) {
        case Coupling::equal: return 1.0;
        case Coupling::opposite: return -1.0;
        default: return 0.0;
    }
}

}  // namespace

Composite composite(double m, double energy, const PowerSeriesPair& p) {
    return {-2.0 * (m * p.s0 + energy * p.v0), 2.0 * (m * p.s1 + energy * p.v1), 2.0 * (m * p.s2 + energy * p.v2)};
}

double constraint_residual(double m, double energy, const PowerSeriesPair& p) {
    check_mass(m);
    const double q = m * p.s2 + energy * p.v2;
    if (q < 0.0) {
        fail(Errc::negative_oscillator, "m s2 + E v2 = " + format_number(q) + " < 0");
    }
    return (m * p.s1 + energy * p.v1) + (m * p.s0 + energy * p.v0) * std::sqrt(4.0 * m * q);
}

Superpotential ground_superpotential(double m, double energy, const PowerSeriesPair& p) {
    check_mass(m);
    const Composite k = composite(m, energy, p);
    require_closed_form(m, energy, p, k);
    const double offset = std::sqrt(m / 2.0) * k.a;
    const double root = std::sqrt(2.0 * m);
    const double slope = std::sqrt(k.c);
    return Superpotential(
        "coulombic-W", [=](double r) { return offset - 1.0 / (root * r) + slope * r; },
        [=](double r) { return 1.0 / (root * r * r) + slope; },
        [=](double r) { return offset * r - std::log(r) / root + 0.5 * slope * r * r; });
}

double nonrel_energy(int n, double m, double energy, const PowerSeriesPair& p) {
    check_mass(m);
    if (n < 0) {
        fail(Errc::invalid_argument, "state index must be non-negative");
    }
    const Composite k = composite(m, energy, p);
    require_closed_form(m, energy, p, k);
    return formula(n, m, k);
}

double nonrel_energy_expanded(int n, double m, double energy, const PowerSeriesPair& p) {
    const double q = m * p.s0 + energy * p.v0;
    return -2.0 * m * q * q + (2.0 * n + 3.0) * std::sqrt(p.s2 + energy * p.v2 / m);
}

Coupling classify(const PowerSeriesPair& p) {
    if (p.v0 == 0.0 && p.v1 == 0.0 && p.v2 == 0.0) {
        return Coupling::scalar_only;
    }
    if (p.v0 == p.s0 && p.v1 == p.s1 && p.v2 == p.s2) {
        return Coupling::equal;
    }
    if (p.v0 == -p.s0 && p.v1 == -p.s1 && p.v2 == -p.s2) {
        return Coupling::opposite;
    }
    return Coupling::mixed;
}

PowerSeriesPair with_derived_linear_term(double m, double energy, const PowerSeriesPair& p) {
    const Coupling cls = classify(p);
    if (cls == Coupling::mixed) {
        fail(Errc::invalid_argument, "deriving the linear term needs S = V, S = -V or V = 0");
    }
    const double q = m * p.s2 + energy * p.v2;
    if (q < 0.0) {
        fail(Errc::negative_oscillator, "m s2 + E v2 = " + format_number(q) + " < 0");
    }
    const double rho = ratio(cls);
    const double weight = m + rho * energy;
    if (weight == 0.0) {
        fail(Errc::no_bound_state, "m + E v1/s1 vanishes; the linear term is undetermined");
    }
    const double target = -(m * p.s0 + energy * p.v0) * std::sqrt(4.0 * m * q);
    PowerSeriesPair out = p;
    out.s1 = target / weight;
    out.v1 = rho * out.s1;
    return out;
}

Superpotential OscCoulombSolution::W() const {
    return ground_superpotential(m, E, pair);
}

RadialGrid default_verification_grid() {
    return RadialGrid::with_spacing(1e-3, 40.0, 1e-3);
}

namespace {

struct Iterate {
    bool valid = false;
    double eps = 0.0;
};

class EnergyMap {
  public:
    EnergyMap(int n, double m, const PowerSeriesPair& p, bool derive) : n_(n), m_(m), p_(p), derive_(derive) {}

    PowerSeriesPair pair_at(double energy) const {
        return derive_ ? with_derived_linear_term(m_, energy, p_) : p_;
    }

    Iterate eps(double energy) const {
        if (m_ * p_.s2 + energy * p_.v2 < 0.0) {
            return {};
        }
        const Composite k = composite(m_, energy, pair_at(energy));
        if (!(k.c > 0.0)) {
            return {};
        }
        return {true, formula(n_, m_, k)};
    }

    double g(double energy) const {
        const Iterate it = eps(energy);
        return it.valid ? energy * energy - m_ * m_ - it.eps : std::nan("");
    }

  private:
    int n_;
    double m_;
    PowerSeriesPair p_;
    bool derive_;
};

// Scans g on (0, e_max] for the lowest sign change, then bisects.
double bisection_fallback(const EnergyMap& map, double m, double tol, int& iterations) {
    constexpr int kScan = 512;
    for (double e_max = 2.0 * m; e_max <= 1024.0 * m; e_max *= 2.0) {
        double prev_e = 0.0;
        double prev_g = std::nan("");
        for (int j = 1; j <= kScan; ++j) {
            const double e = e_max * j / kScan;
            const double g = map.g(e);
            if (std::isfinite(g) && std::isfinite(prev_g) && ((prev_g < 0.0) != (g < 0.0) || g == 0.0)) {
                double lo = prev_e;
                double hi = e;
                double g_lo = prev_g;
                for (int it = 0; it < 200; ++it) {
                    ++iterations;
                    const double mid = 0.5 * (lo + hi);
                    const double gm = map.g(mid);
                    if (std::abs(gm) < tol || hi - lo < 4e-16 * hi) {
                        return mid;
                    }
                    if ((gm < 0.0) == (g_lo < 0.0)) {
                        lo = mid;
                        g_lo = gm;
                    } else {
                        hi = mid;
                    }
                }
                fail(Errc::no_convergence, "bisection on E^2 - m^2 - eps(E) exhausted 200 iterations");
            }
            prev_e = e;
            prev_g = g;
        }
    }
    fail(Errc::no_bound_state, "no sign change of E^2 - m^2 - eps(E) for 0 < E <= 1024 m");
}

double solve_energy(const EnergyMap& map, double m, const SelfConsistentOptions& options, int& iterations) {
    double energy = m;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const Iterate cur = map.eps(energy);
        if (!cur.valid || m * m + cur.eps < 0.0) {
            break;
        }
        energy = (1.0 - options.damping) * energy + options.damping * std::sqrt(m * m + cur.eps);
        iterations = it;
        const double g = map.g(energy);
        if (std::isfinite(g) && std::abs(g) < options.tolerance) {
            return energy;
        }
    }
    return bisection_fallback(map, m, options.tolerance, iterations);
}

}  // namespace

OscCoulombSolution solve_selfconsistent(int n, double m, const PowerSeriesPair& p,
                                        const SelfConsistentOptions& options) {
    check_mass(m);
    check_finite(p);
    if (n < 0) {
        fail(Errc::invalid_argument, "state index must be non-negative");
    }
    if (!(options.damping > 0.0 && options.damping <= 1.0)) {
        fail(Errc::invalid_argument, "damping must lie in (0, 1]");
    }
    const Coupling cls = classify(p);
    if (cls == Coupling::mixed) {
        fail(Errc::invalid_argument, "self-consistent solve needs S = V, S = -V or V = 0 coefficientwise");
    }

    OscCoulombSolution s;
    s.n = n;
    s.m = m;
    s.pair = p;
    if (n > 0) {
        s.warnings.push_back("eps_n for n > 0 is evaluated as printed and is unverified");
    }
    const EnergyMap map(n, m, p, options.derive_linear_term);

    auto degenerate = [&](const std::string& why) {
        s.degenerate = true;
        s.E = m;
        s.pair = options.derive_linear_term ? PowerSeriesPair{p.s0, 0.0, p.s2, p.v0, 0.0, p.v2} : p;
        s.warnings.push_back("S = -V: U = 2S(m - E) vanishes as E -> m; free-particle limit (" + why + ")");
        return s;
    };

    if (cls == Coupling::scalar_only) {
        const PowerSeriesPair eff = map.pair_at(m);
        const Composite k = composite(m, m, eff);
        require_closed_form(m, m, eff, k);
        const double eps = formula(n, m, k);
        if (m * m + eps <= 0.0) {
            fail(Errc::no_bound_state, "m^2 + eps = " + format_number(m * m + eps) + " <= 0");
        }
        s.E = std::sqrt(m * m + eps);
        s.iterations = 1;
    } else {
        try {
            s.E = solve_energy(map, m, options, s.iterations);
        } catch (const Error& e) {
            if (cls == Coupling::opposite) {
                return degenerate(e.what());
            }
            throw;
        }
        if (cls == Coupling::opposite && std::abs(s.E - m) < 1e-9 * m) {
            return degenerate("root at E = m");
        }
    }

    s.pair = map.pair_at(s.E);
    const Composite k = composite(m, s.E, s.pair);
    s.a = k.a;
    s.b = k.b;
    s.c = k.c;
    if (!(k.c > 0.0)) {
        fail(Errc::negative_oscillator, "c = " + format_number(k.c) + " at the converged energy");
    }
    s.constraint_residual = constraint_residual(m, s.E, s.pair);
    if (std::abs(s.constraint_residual) > kRootConstraintTolerance) {
        fail(Errc::constraint_violated, "constraint residual " + format_number(s.constraint_residual) +
                                            " at the converged E = " + format_number(s.E));
    }
    s.eps = formula(n, m, k);
    s.g_residual = s.E * s.E - m * m - s.eps;

    if (options.compute_residuals) {
        const RadialGrid grid = options.verification_grid.value_or(default_verification_grid());
        const PotentialSpec spec = s.pair;
        const PhysParams params{m};
        const double energy = s.E;
        s.residual_nr = residual_nonrel(
                            s.W(), [&](double r) { return nonrel_strength(spec, params, energy, r); },
                            formula(0, m, k), m, grid)
                            .sup_norm;
    }
    return s;
}

}  // namespace kgd::coulombic
