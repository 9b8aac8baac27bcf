#include "kgdecomp/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgdecomp/errors.hpp"

namespace kgd::perturb {

namespace {

constexpr double kUnderflowFloor = 1e-300;
constexpr double kTailTolerance = 1e-14;
constexpr int kMaxBoxDoublings = 4;

// Integral over [0, r0] of the quadratic through the first three samples.
double head_integral(std::span<const double> f, double r0, double h) {
    const double a = r0;
    const double a2 = a * a;
    const double a3 = a2 * a;
    const double h2 = h * h;
    return f[0] * (a3 / 3.0 + 1.5 * h * a2 + 2.0 * h2 * a) / (2.0 * h2) - f[1] * (a3 / 3.0 + h * a2) / h2 +
           f[2] * (a3 / 3.0 + 0.5 * h * a2) / (2.0 * h2);
}

double integral_from_origin(std::span<const double> f, const RadialGrid& grid) {
    return head_integral(f, grid.r_min(), grid.h()) + simpson(f, grid.h());
}

void check_samples(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            fail(Errc::non_finite_value, std::string(what) + " contains a non-finite sample");
        }
    }
}

}  // namespace

std::array<DeltaVTerm, 6> deltaV_terms(const PowerSeriesPair& p) {
    return {{
        {-2, p.s0 * p.s0 - p.v0 * p.v0},
        {0, 2.0 * (p.s0 * p.s1 - p.v0 * p.v1)},
        {1, 2.0 * (p.s0 * p.s2 - p.v0 * p.v2)},
        {2, p.s1 * p.s1 - p.v1 * p.v1},
        {3, 2.0 * (p.s1 * p.s2 - p.v1 * p.v2)},
        {4, p.s2 * p.s2 - p.v2 * p.v2},
    }};
}

double eval_terms(std::span<const DeltaVTerm> terms, double r) {
    double total = 0.0;
    for (const auto& t : terms) {
        if (t.coefficient != 0.0) {
            total += t.coefficient * std::pow(r, t.power);
        }
    }
    return total;
}

RadialFunction as_function(const std::array<DeltaVTerm, 6>& terms) {
    return [terms](double r) { return eval_terms(terms, r); };
}

OrderCorrection order_correction(std::span<const double> chi2, const Superpotential& w,
                                 std::span<const double> source, double m, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    if (chi2.size() != n || source.size() != n) {
        fail(Errc::length_mismatch, "chi^2 and source need one sample per grid node");
    }
    if (!std::isfinite(m) || m <= 0.0) {
        fail(Errc::invalid_argument, "mass must be finite and positive");
    }
    check_samples(chi2, "chi^2");
    check_samples(source, "source");

    const double peak = *std::max_element(chi2.begin(), chi2.end());
    if (!(peak > 0.0) || *std::min_element(chi2.begin(), chi2.end()) < 0.0) {
        fail(Errc::non_normalizable_base, "chi^2 must be non-negative and not identically zero");
    }
    std::vector<double> weight(chi2.begin(), chi2.end());
    for (double& v : weight) {
        v /= peak;
    }
    const double norm = integral_from_origin(weight, grid);
    if (!std::isfinite(norm) || norm <= 0.0) {
        fail(Errc::non_normalizable_base, "integral of chi^2 is not finite and positive");
    }

    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = weight[i] * source[i];
    }
    OrderCorrection out;
    out.deps = integral_from_origin(f, grid) / norm;
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = weight[i] * (source[i] - out.deps);
    }

    // Inside the peak integrate outward from the origin; beyond it integrate
    // inward from r_max.  Both accumulate only small contributions.
    const double h = grid.h();
    const auto forward = cumulative_simpson(f, h);
    const double head = head_integral(f, grid.r_min(), h);
    std::vector<double> reversed(f.rbegin(), f.rend());
    auto backward = cumulative_simpson(reversed, h);
    std::reverse(backward.begin(), backward.end());
    const auto peak_at = static_cast<std::size_t>(std::max_element(weight.begin(), weight.end()) - weight.begin());

    out.solvability = std::abs(head + forward.back()) / norm;
    out.valid_end = n;
    while (out.valid_end > 0 && weight[out.valid_end - 1] < kUnderflowFloor) {
        --out.valid_end;
    }
    const double root = std::sqrt(2.0 * m);
    out.dW.assign(n, 0.0);
    for (std::size_t i = 0; i < out.valid_end; ++i) {
        if (weight[i] < kUnderflowFloor) {
            continue;
        }
        const double tail = i <= peak_at ? -(head + forward[i]) : backward[i];
        out.dW[i] = root * tail / weight[i];
    }

    double max_source = 0.0;
    for (double s : source) {
        max_source = std::max(max_source, std::abs(s));
    }
    out.tail_converged = weight.back() * max_source < kTailTolerance * norm;

    if (out.valid_end >= 3) {
        const double inv_root = 1.0 / root;
        for (std::size_t i = 1; i + 1 < out.valid_end; ++i) {
            if (weight[i] < kTailTolerance) {
                continue;  // the inward integral there is dominated by the cut at r_max
            }
            const double slope = (out.dW[i + 1] - out.dW[i - 1]) / (2.0 * h);
            const double res = 2.0 * w(grid[i]) * out.dW[i] - slope * inv_root - (source[i] - out.deps);
            if (std::isfinite(res)) {
                out.residual = std::max(out.residual, std::abs(res));
            }
        }
    }
    return out;
}

double PerturbationSeries::energy_shift(double lambda_value, std::size_t max_order) const {
    const std::size_t upto = max_order == 0 ? orders.size() : std::min(max_order, orders.size());
    double total = 0.0;
    double power = 1.0;
    for (std::size_t i = 0; i < upto; ++i) {
        power *= lambda_value;
        total += power * orders[i].deps;
    }
    return total;
}

PerturbationSeries run_series(const Superpotential& w, std::span<const RadialFunction> delta_v_by_order, int K,
                              double m, const RadialGrid& grid, double lambda) {
    if (K < 1 || K > kMaxOrder) {
        fail(Errc::invalid_argument, "perturbation order must be 1, 2 or 3");
    }
    if (!std::isfinite(lambda)) {
        fail(Errc::invalid_argument, "lambda must be finite");
    }

    auto sample_source = [&](std::size_t k, const RadialGrid& g) {
        std::vector<double> out(g.size(), 0.0);
        if (k < delta_v_by_order.size() && delta_v_by_order[k]) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                out[i] = delta_v_by_order[k](g[i]);
            }
        }
        return out;
    };

    RadialGrid box = grid;
    std::vector<double> chi;
    std::vector<double> chi2;
    std::vector<double> first;
    for (int attempt = 0;; ++attempt) {
        try {
            chi = wavefunction(w, m, box);
        } catch (const Error& e) {
            if (e.code() == Errc::overflow) {
                fail(Errc::non_normalizable_base, e.what());
            }
            throw;
        }
        chi2.resize(chi.size());
        for (std::size_t i = 0; i < chi.size(); ++i) {
            chi2[i] = chi[i] * chi[i];
        }
        first = sample_source(0, box);
        double max_source = 0.0;
        for (double s : first) {
            max_source = std::max(max_source, std::abs(s));
        }
        const double norm = integral_from_origin(chi2, box);
        if (chi2.back() * max_source < kTailTolerance * norm) {
            break;
        }
        if (attempt == kMaxBoxDoublings) {
            fail(Errc::non_normalizable_base, "chi^2 tail still significant at r_max = " +
                                                  std::to_string(box.r_max()) + " after doubling the box");
        }
        const double r_max = box.r_min() + 2.0 * (box.r_max() - box.r_min());
        box = RadialGrid::with_spacing(box.r_min(), r_max, box.h());
    }

    PerturbationSeries series{box, chi, {}, lambda, box.size(), {}};
    if (box.r_max() != grid.r_max()) {
        series.warnings.push_back("box extended to r_max = " + std::to_string(box.r_max()) +
                                  " to contain the base amplitude");
    }
    const std::size_t n = box.size();
    std::vector<double> source;
    for (int k = 1; k <= K; ++k) {
        source = k == 1 ? first : sample_source(static_cast<std::size_t>(k - 1), box);
        if (k == 2) {
            const auto& d1 = series.orders[0].dW;
            for (std::size_t i = 0; i < n; ++i) {
                source[i] -= d1[i] * d1[i];
            }
        } else if (k == 3) {
            const auto& d1 = series.orders[0].dW;
            const auto& d2 = series.orders[1].dW;
            for (std::size_t i = 0; i < n; ++i) {
                source[i] -= 2.0 * d1[i] * d2[i];
            }
        }
        auto order = order_correction(chi2, w, source, m, box);
        series.valid_end = std::min(series.valid_end, order.valid_end);
        if (order.valid_end < n) {
            series.warnings.push_back("order " + std::to_string(k) + ": chi^2 underflows beyond r = " +
                                      std::to_string(box[order.valid_end]) + "; dW trimmed there");
        }
        series.orders.push_back({k, order.deps, std::move(order.dW)});
    }
    return series;
}

PerturbationSeries run_series(const Superpotential& w, const PowerSeriesPair& p, int K, double m,
                              const RadialGrid& grid, double lambda) {
    const std::array<RadialFunction, 1> split{as_function(deltaV_terms(p))};
    auto series = run_series(w, split, K, m, grid, lambda);
    series.warnings.push_back("S^2 - V^2 assigned entirely to first order; the constant 2(s0 s1 - v0 v1) enters as "
                              "a first-order energy shift");
    return series;
}

std::vector<double> corrected_wavefunction(const PerturbationSeries& series, double m) {
    if (!std::isfinite(m) || m <= 0.0) {
        fail(Errc::invalid_argument, "mass must be finite and positive");
    }
    const std::size_t n = series.grid.size();
    std::vector<double> total(n, 0.0);
    double power = 1.0;
    for (const auto& order : series.orders) {
        power *= series.lambda;
        for (std::size_t i = 0; i < n; ++i) {
            total[i] += power * order.dW[i];
        }
    }
    auto exponent = cumulative_trapezoid(total, series.grid.h());
    const double root = std::sqrt(2.0 * m);
    const double limit = std::log(std::numeric_limits<double>::max());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        exponent[i] *= -root;
        if (!(exponent[i] < limit)) {
            fail(Errc::overflow, "relativistic correction exponent leaves the double range at r = " +
                                     std::to_string(series.grid[i]));
        }
        top = std::max(top, exponent[i]);
    }
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi[i] = std::exp(exponent[i] - top);
    }
    return phi;
}

}  // namespace kgd::perturb
