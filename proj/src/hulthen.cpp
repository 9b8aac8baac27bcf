#include "kgdecomp/hulthen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kgdecomp/errors.hpp"

namespace kgd::hulthen {

namespace {

constexpr int kPanels = 64;
constexpr double kRootTolerance = 1e-13;
constexpr int kMaxRootIterations = 200;
constexpr double kSignResidualTolerance = 1e-8;

void check_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        fail(Errc::invalid_argument, std::string(name) + " must be finite and positive");
    }
}

// log(1 - e^{-alpha r}), the alpha-scaled antiderivative of 1/(e^{alpha r} - 1).
double log_one_minus_decay(double alpha, double r) {
    return std::log(-std::expm1(-alpha * r));
}

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Safeguarded secant on a sign-changing bracket.
template <class F>
double refine_root(F&& f, double a, double b, double fa, double fb) {
    double width = b - a;
    for (int iter = 0; iter < kMaxRootIterations; ++iter) {
        double x = a - fa * (b - a) / (fb - fa);
        const double margin = 0.05 * (b - a);
        if (!(x > a + margin && x < b - margin) || (b - a) > 0.5 * width) {
            x = 0.5 * (a + b);
        }
        width = b - a;
        const double fx = f(x);
        if (fx == 0.0 || std::abs(fx) < kRootTolerance) {
            return x;
        }
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (b - a <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) {
            return std::abs(fa) < std::abs(fb) ? a : b;
        }
    }
    fail(Errc::no_convergence, "root refinement exhausted " + std::to_string(kMaxRootIterations) + " iterations");
}

}  // namespace

double coefficient_A(double m, double alpha, double u0) {
    return std::sqrt(m / 2.0) / alpha * (u0 - alpha * alpha / (2.0 * m));
}

NonrelGround nonrel_ground(double m, double alpha, double u0) {
    check_positive(m, "m");
    check_positive(alpha, "alpha");
    const double a = coefficient_A(m, alpha, u0);
    if (!(a > 0.0)) {
        fail(Errc::no_bound_state, "A = " + format_number(a) + " <= 0: U0 = " + format_number(u0) +
                                       " does not exceed alpha^2/2m = " + format_number(alpha * alpha / (2.0 * m)));
    }
    return {a, -a * a};
}

double delta(double m, double alpha, double s0, double v0) {
    check_positive(m, "m");
    check_positive(alpha, "alpha");
    const double diff = (s0 - v0) * (s0 + v0);
    if (diff < 0.0) {
        fail(Errc::vector_dominates, "s0^2 - v0^2 = " + format_number(diff) + " < 0: delta is complex");
    }
    // -1/2 + sqrt(x + 1/4) without cancellation for small x.
    const double x = 2.0 * m * diff / (alpha * alpha);
    return x / (0.5 + std::sqrt(x + 0.25));
}

double coefficient_B(double m, double alpha, double u0, double delta) {
    return -std::sqrt(m / 2.0) * delta * u0 / (alpha * (delta + 1.0));
}

RelCorrection rel_correction(double m, double alpha, double u0, double delta) {
    if (!(delta >= 0.0)) {
        fail(Errc::invalid_argument, "delta must be non-negative");
    }
    const double a = coefficient_A(m, alpha, u0);
    const double b = coefficient_B(m, alpha, u0, delta);
    const double dp1 = delta + 1.0;
    const double expanded =
        delta * u0 / (2.0 * alpha * alpha * dp1 * dp1) * (m * u0 * (delta + 2.0) - alpha * alpha * dp1);
    return {b, -b * (b + 2.0 * a), expanded};
}

double total_binding(double m, double alpha, double u0, double delta) {
    const double inner = 2.0 * m * u0 / (delta + 1.0) - alpha * alpha;
    return -inner * inner / (8.0 * m * alpha * alpha);
}

double strength(double m, const HulthenPair& pair, double energy) {
    return 2.0 * (m * pair.s0 + energy * pair.v0);
}

double energy_equation(double m, const HulthenPair& pair, double delta, double energy) {
    return energy * energy - m * m - total_binding(m, pair.alpha, strength(m, pair, energy), delta);
}

Superpotential nonrel_superpotential(double m, double alpha, double A) {
    const double root = std::sqrt(2.0 * m);
    return Superpotential(
        "hulthen-W",
        [=](double r) { return -(alpha / root) * hulthen_screen(alpha, r) + A; },
        [=](double r) {
            const double y = hulthen_screen(alpha, r);
            return alpha * alpha / root * y * (1.0 + y);
        },
        [=](double r) { return -log_one_minus_decay(alpha, r) / root + A * r; });
}

Superpotential rel_superpotential(double m, double alpha, double delta, double B) {
    const double root = std::sqrt(2.0 * m);
    return Superpotential(
        "hulthen-dW",
        [=](double r) { return -delta * (alpha / root) * hulthen_screen(alpha, r) + B; },
        [=](double r) {
            const double y = hulthen_screen(alpha, r);
            return delta * alpha * alpha / root * y * (1.0 + y);
        },
        [=](double r) { return -delta * log_one_minus_decay(alpha, r) / root + B * r; });
}

double chi_closed(double m, double alpha, double A, double r) {
    return -std::expm1(-alpha * r) * std::exp(-std::sqrt(2.0 * m) * A * r);
}

double phi_closed(double m, double alpha, double delta, double B, double r) {
    return std::pow(-std::expm1(-alpha * r), delta) * std::exp(-std::sqrt(2.0 * m) * B * r);
}

double psi_closed(double m, double alpha, double u0, double delta, int alpha_half_sign, double r) {
    const double rate = m * u0 / (alpha * (delta + 1.0)) + alpha_half_sign * alpha / 2.0;
    return std::pow(-std::expm1(-alpha * r), delta + 1.0) * std::exp(-rate * r);
}

Superpotential HulthenSolution::W() const {
    return nonrel_superpotential(m, pair.alpha, A);
}

Superpotential HulthenSolution::dW() const {
    return rel_superpotential(m, pair.alpha, delta, B);
}

RadialGrid default_verification_grid() {
    return RadialGrid::with_spacing(1e-3, 40.0, 1e-3);
}

ExponentSignCheck check_exponent_sign(const HulthenSolution& s, const RadialGrid& grid) {
    const double alpha = s.pair.alpha;
    const double root = std::sqrt(2.0 * s.m);
    const double binding = total_binding(s.m, alpha, s.U0, s.delta);
    const PotentialSpec spec = s.pair;
    const PhysParams params{s.m};
    const RadialFunction total_u = [&](double r) {
        return nonrel_strength(spec, params, s.E, r) + rel_strength(spec, r);
    };
    auto residual_for = [&](int sign) {
        const double rate = s.m * s.U0 / (alpha * (s.delta + 1.0)) + sign * alpha / 2.0;
        const double dp1 = s.delta + 1.0;
        const Superpotential total(
            "hulthen-W-total",
            [=](double r) { return -dp1 * (alpha / root) * hulthen_screen(alpha, r) + rate / root; },
            [=](double r) {
                const double y = hulthen_screen(alpha, r);
                return dp1 * alpha * alpha / root * y * (1.0 + y);
            });
        return residual_nonrel(total, total_u, binding, s.m, grid).sup_norm;
    };
    ExponentSignCheck check{};
    check.residual_minus = residual_for(-1);
    check.residual_plus = residual_for(+1);
    if (check.residual_minus <= kSignResidualTolerance) {
        check.passing_sign = -1;
    } else if (check.residual_plus <= kSignResidualTolerance) {
        check.passing_sign = +1;
    }
    return check;
}

HulthenSolution solve_ground(double m, const HulthenPair& pair, const SolveOptions& options) {
    check_positive(m, "m");
    check_positive(pair.alpha, "alpha");
    if (!std::isfinite(pair.s0) || !std::isfinite(pair.v0)) {
        fail(Errc::invalid_argument, "s0 and v0 must be finite");
    }
    HulthenSolution s;
    s.m = m;
    s.pair = pair;
    s.delta = delta(m, pair.alpha, pair.s0, pair.v0);

    const auto f = [&](double energy) { return energy_equation(m, pair, s.delta, energy); };
    const auto decays = [&](double energy) {
        const double u0 = strength(m, pair, energy);
        const double a = coefficient_A(m, pair.alpha, u0);
        const double b = coefficient_B(m, pair.alpha, u0, s.delta);
        return a > 0.0 && a + b > 0.0;
    };

    std::vector<double> e_nodes(kPanels + 1);
    std::vector<double> f_nodes(kPanels + 1);
    for (int j = 0; j <= kPanels; ++j) {
        e_nodes[j] = m * j / kPanels;
        f_nodes[j] = f(e_nodes[j]);
    }
    s.f_at_zero = f_nodes.front();
    s.f_at_mass = f_nodes.back();

    std::vector<double> candidates;
    for (int j = 0; j < kPanels; ++j) {
        const double fa = f_nodes[j];
        const double fb = f_nodes[j + 1];
        if (j + 1 < kPanels && fb == 0.0) {
            candidates.push_back(e_nodes[j + 1]);
        } else if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            candidates.push_back(refine_root(f, e_nodes[j], e_nodes[j + 1], fa, fb));
        }
    }
    for (double e : candidates) {
        if (decays(e)) {
            s.roots.push_back(e);
        } else {
            s.warnings.push_back("root E = " + format_number(e) +
                                 " rejected: wavefunction does not decay (A <= 0 or A + B <= 0)");
        }
    }
    if (s.roots.empty()) {
        std::string detail = "no admissible root of the energy equation in (0, m)";
        detail += candidates.empty() ? "; no sign change found" : "; all roots fail A + B > 0";
        fail(Errc::no_bound_state, detail);
    }
    if (s.roots.size() > 1) {
        s.warnings.push_back(std::to_string(s.roots.size()) + " admissible roots; returning the largest E");
    }
    s.E = *std::max_element(s.roots.begin(), s.roots.end());
    s.U0 = strength(m, pair, s.E);
    s.A = coefficient_A(m, pair.alpha, s.U0);
    s.eps = -s.A * s.A;
    const auto rel = rel_correction(m, pair.alpha, s.U0, s.delta);
    s.B = rel.B;
    s.deps = rel.deps;
    s.deps_expanded = rel.deps_expanded;

    if (options.compute_residuals) {
        const RadialGrid grid = options.verification_grid.value_or(default_verification_grid());
        const PotentialSpec spec = pair;
        const PhysParams params{m};
        const double energy = s.E;
        s.residual_nr = residual_nonrel(
                            s.W(), [&](double r) { return nonrel_strength(spec, params, energy, r); }, s.eps, m,
                            grid)
                            .sup_norm;
        s.residual_rel =
            residual_rel(s.W(), s.dW(), [&](double r) { return rel_strength(spec, r); }, s.deps, m, grid).sup_norm;
        s.sign_check = check_exponent_sign(s, grid);
        if (s.sign_check.passing_sign == -1) {
            s.warnings.push_back("full wavefunction exponent is -[m U0/(alpha(delta+1)) - alpha/2] r; the +alpha/2 "
                                 "form leaves a combined Riccati residual of " +
                                 format_number(s.sign_check.residual_plus));
        } else if (s.sign_check.passing_sign == +1) {
            s.warnings.push_back("full wavefunction exponent is -[m U0/(alpha(delta+1)) + alpha/2] r");
        } else {
            s.warnings.push_back("neither exponent sign satisfies the combined Riccati equation");
        }
    }
    return s;
}

}  // namespace kgd::hulthen
