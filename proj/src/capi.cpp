#include "kgdecomp/kgdecomp.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "kgdecomp/coulombic.hpp"
#include "kgdecomp/errors.hpp"
#include "kgdecomp/hulthen.hpp"
#include "kgdecomp/oracle.hpp"
#include "kgdecomp/perturb.hpp"
#include "kgdecomp/verify.hpp"

struct kgd_table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};

struct kgd_hulthen {
    kgd::hulthen::HulthenSolution solution;
};

struct kgd_coulombic {
    kgd::coulombic::OscCoulombSolution solution;
};

struct kgd_series {
    kgd::perturb::PerturbationSeries series;
};

struct kgd_report {
    std::vector<kgd::verify::Check> checks;
};

namespace {

thread_local std::string last_error;

kgd_status to_status(kgd::Errc code) {
    using kgd::Errc;
    switch (code) {
        case Errc::invalid_argument: return KGD_INVALID_ARGUMENT;
        case Errc::non_positive_radius: return KGD_NON_POSITIVE_RADIUS;
        case Errc::out_of_grid_range: return KGD_OUT_OF_GRID_RANGE;
        case Errc::non_finite_value: return KGD_NON_FINITE_VALUE;
        case Errc::overflow: return KGD_OVERFLOW;
        case Errc::length_mismatch: return KGD_LENGTH_MISMATCH;
        case Errc::no_bound_state: return KGD_NO_BOUND_STATE;
        case Errc::vector_dominates: return KGD_VECTOR_DOMINATES;
        case Errc::no_convergence: return KGD_NO_CONVERGENCE;
        case Errc::negative_oscillator: return KGD_NEGATIVE_OSCILLATOR;
        case Errc::constraint_violated: return KGD_CONSTRAINT_VIOLATED;
        case Errc::non_normalizable_base: return KGD_NON_NORMALIZABLE_BASE;
        case Errc::complex_energy: return KGD_COMPLEX_ENERGY;
        case Errc::non_finite_potential: return KGD_NON_FINITE_POTENTIAL;
        case Errc::io: return KGD_IO_ERROR;
    }
    return KGD_INTERNAL_ERROR;
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <class F>
kgd_status guarded(F&& body) noexcept {
    try {
        body();
        last_error.clear();
        return KGD_OK;
    } catch (const kgd::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return KGD_INTERNAL_ERROR;
}

void require(bool ok, const char* what) {
    if (!ok) {
        kgd::fail(kgd::Errc::invalid_argument, what);
    }
}

kgd::RadialGrid make_grid(const kgd_grid_spec& g) {
    require(std::isfinite(g.r_min) && std::isfinite(g.r_max) && std::isfinite(g.h) && g.h > 0.0,
            "grid bounds and spacing must be finite with h > 0");
    if (g.r_min == 0.0) {
        require(g.r_max > g.h, "grid needs r_max > h");
        return kgd::RadialGrid::from_origin(g.h, g.r_max);
    }
    return kgd::RadialGrid::with_spacing(g.r_min, g.r_max, g.h);
}

kgd::PowerSeriesPair to_pair(const kgd_power_pair& p) {
    return {p.s0, p.s1, p.s2, p.v0, p.v1, p.v2};
}

kgd_power_pair from_pair(const kgd::PowerSeriesPair& p) {
    return {p.s0, p.s1, p.s2, p.v0, p.v1, p.v2};
}

kgd::HulthenPair to_pair(const kgd_hulthen_pair& p) {
    return {p.s0, p.v0, p.alpha};
}

std::vector<double> node_values(const kgd::RadialGrid& grid) {
    return {grid.nodes().begin(), grid.nodes().end()};
}

const char* warning_at(const std::vector<std::string>& w, std::size_t i) {
    return i < w.size() ? w[i].c_str() : nullptr;
}

kgd_status fill_oracle(const kgd::PotentialSpec& spec, double m, const kgd_grid_spec& grid, size_t k,
                       double* energies, double* eigenvalues) {
    return guarded([&] {
        require(k > 0, "state count must be positive");
        const auto result = kgd::oracle::kleingordon_fd(spec, m, make_grid(grid), k);
        for (size_t i = 0; i < k; ++i) {
            if (energies) {
                energies[i] = result.energies[i];
            }
            if (eigenvalues) {
                eigenvalues[i] = result.eigenvalues[i];
            }
        }
    });
}

}  // namespace

extern "C" {

const char* kgd_status_name(kgd_status status) {
    switch (status) {
        case KGD_OK: return "Ok";
        case KGD_INTERNAL_ERROR: return "InternalError";
        default: break;
    }
    if (status >= KGD_INVALID_ARGUMENT && status <= KGD_IO_ERROR) {
        return kgd::errc_name(static_cast<kgd::Errc>(status - 1));
    }
    return "Unknown";
}

const char* kgd_last_error(void) {
    return last_error.c_str();
}

const char* kgd_version(void) {
    return "0.1.0";
}

size_t kgd_table_rows(const kgd_table* t) {
    return t && !t->columns.empty() ? t->columns.front().size() : 0;
}

size_t kgd_table_columns(const kgd_table* t) {
    return t ? t->columns.size() : 0;
}

const char* kgd_table_column_name(const kgd_table* t, size_t column) {
    return t && column < t->names.size() ? t->names[column].c_str() : nullptr;
}

const double* kgd_table_column(const kgd_table* t, size_t column) {
    return t && column < t->columns.size() ? t->columns[column].data() : nullptr;
}

void kgd_table_free(kgd_table* t) {
    delete t;
}

kgd_status kgd_hulthen_solve(double m, kgd_hulthen_pair pair, const kgd_grid_spec* residual_grid,
                             kgd_hulthen** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(out != nullptr, "output handle is NULL");
        kgd::hulthen::SolveOptions options;
        if (residual_grid) {
            options.verification_grid = make_grid(*residual_grid);
        }
        *out = new kgd_hulthen{kgd::hulthen::solve_ground(m, to_pair(pair), options)};
    });
}

kgd_status kgd_hulthen_summary_get(const kgd_hulthen* h, kgd_hulthen_summary* out) {
    return guarded([&] {
        require(h && out, "NULL argument");
        const auto& s = h->solution;
        *out = {s.E,  s.eps, s.deps, s.deps_expanded, s.delta, s.A, s.B, s.U0, s.residual_nr, s.residual_rel,
                s.sign_check.passing_sign};
    });
}

size_t kgd_hulthen_root_count(const kgd_hulthen* h) {
    return h ? h->solution.roots.size() : 0;
}

double kgd_hulthen_root(const kgd_hulthen* h, size_t index) {
    return h && index < h->solution.roots.size() ? h->solution.roots[index] : std::nan("");
}

size_t kgd_hulthen_warning_count(const kgd_hulthen* h) {
    return h ? h->solution.warnings.size() : 0;
}

const char* kgd_hulthen_warning(const kgd_hulthen* h, size_t index) {
    return h ? warning_at(h->solution.warnings, index) : nullptr;
}

kgd_status kgd_hulthen_wavefunction(const kgd_hulthen* h, kgd_grid_spec grid, int raw, kgd_table** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(h && out, "NULL argument");
        const auto g = make_grid(grid);
        const auto& s = h->solution;
        auto table = std::make_unique<kgd_table>();
        auto chi = kgd::wavefunction(s.W(), s.m, g);
        auto phi = kgd::wavefunction(s.dW(), s.m, g);
        auto psi = kgd::combine(chi, phi).samples;
        table->names = {"r", "chi", "phi", "psi"};
        table->columns = {node_values(g), std::move(chi), std::move(phi), std::move(psi)};
        if (raw) {
            table->names.insert(table->names.end(), {"chi_raw", "phi_raw"});
            table->columns.push_back(kgd::raw_wavefunction(s.W(), s.m, g));
            table->columns.push_back(kgd::raw_wavefunction(s.dW(), s.m, g));
        }
        *out = table.release();
    });
}

void kgd_hulthen_free(kgd_hulthen* h) {
    delete h;
}

kgd_status kgd_coulombic_solve(int n, double m, kgd_power_pair pair, int derive_linear_term,
                               const kgd_grid_spec* residual_grid, kgd_coulombic** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(out != nullptr, "output handle is NULL");
        kgd::coulombic::SelfConsistentOptions options;
        options.derive_linear_term = derive_linear_term != 0;
        if (residual_grid) {
            options.verification_grid = make_grid(*residual_grid);
        }
        *out = new kgd_coulombic{kgd::coulombic::solve_selfconsistent(n, m, to_pair(pair), options)};
    });
}

kgd_status kgd_coulombic_summary_get(const kgd_coulombic* c, kgd_coulombic_summary* out) {
    return guarded([&] {
        require(c && out, "NULL argument");
        const auto& s = c->solution;
        *out = {s.n,
                s.E,
                s.eps,
                s.a,
                s.b,
                s.c,
                s.constraint_residual,
                s.residual_nr,
                s.g_residual,
                s.iterations,
                s.degenerate ? 1 : 0,
                from_pair(s.pair)};
    });
}

size_t kgd_coulombic_warning_count(const kgd_coulombic* c) {
    return c ? c->solution.warnings.size() : 0;
}

const char* kgd_coulombic_warning(const kgd_coulombic* c, size_t index) {
    return c ? warning_at(c->solution.warnings, index) : nullptr;
}

kgd_status kgd_coulombic_wavefunction(const kgd_coulombic* c, kgd_grid_spec grid, int raw, kgd_table** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(c && out, "NULL argument");
        const auto& s = c->solution;
        require(s.n == 0, "closed-form amplitude exists only for the ground state");
        require(!s.degenerate, "degenerate S = -V solution has no bound amplitude");
        const auto g = make_grid(grid);
        auto table = std::make_unique<kgd_table>();
        table->names = {"r", "chi"};
        table->columns = {node_values(g), kgd::wavefunction(s.W(), s.m, g)};
        if (raw) {
            table->names.push_back("chi_raw");
            table->columns.push_back(kgd::raw_wavefunction(s.W(), s.m, g));
        }
        *out = table.release();
    });
}

void kgd_coulombic_free(kgd_coulombic* c) {
    delete c;
}

kgd_status kgd_coulombic_constraint(double m, double energy, kgd_power_pair pair, double* out) {
    return guarded([&] {
        require(out != nullptr, "output is NULL");
        *out = kgd::coulombic::constraint_residual(m, energy, to_pair(pair));
    });
}

kgd_status kgd_coulombic_energy(int n, double m, double energy, kgd_power_pair pair, double* out) {
    return guarded([&] {
        require(out != nullptr, "output is NULL");
        *out = kgd::coulombic::nonrel_energy(n, m, energy, to_pair(pair));
    });
}

kgd_status kgd_series_run_power(double m, double base_energy, kgd_power_pair base, kgd_power_pair correction,
                                int order, double lambda, kgd_grid_spec grid, kgd_series** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(out != nullptr, "output handle is NULL");
        const auto w = kgd::coulombic::ground_superpotential(m, base_energy, to_pair(base));
        *out = new kgd_series{kgd::perturb::run_series(w, to_pair(correction), order, m, make_grid(grid), lambda)};
    });
}

kgd_status kgd_series_run(double m, kgd_radial_fn w, kgd_radial_fn w_derivative, const kgd_radial_fn* delta_v,
                          int order, double lambda, void* user, kgd_grid_spec grid, kgd_series** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(out != nullptr && w != nullptr, "output handle and superpotential must be non-NULL");
        require(order >= 1 && order <= kgd::perturb::kMaxOrder, "perturbation order must be 1, 2 or 3");
        kgd::RadialFunction derivative;
        if (w_derivative) {
            derivative = [w_derivative, user](double r) { return w_derivative(r, user); };
        }
        const kgd::Superpotential sp("callback", [w, user](double r) { return w(r, user); }, derivative);
        std::vector<kgd::RadialFunction> dv(static_cast<std::size_t>(order));
        for (int k = 0; delta_v && k < order; ++k) {
            if (const auto f = delta_v[k]) {
                dv[static_cast<std::size_t>(k)] = [f, user](double r) { return f(r, user); };
            }
        }
        *out = new kgd_series{kgd::perturb::run_series(sp, dv, order, m, make_grid(grid), lambda)};
    });
}

int kgd_series_order(const kgd_series* s) {
    return s ? static_cast<int>(s->series.orders.size()) : 0;
}

double kgd_series_deps(const kgd_series* s, int k) {
    if (!s || k < 1 || k > kgd_series_order(s)) {
        return std::nan("");
    }
    return s->series.orders[static_cast<std::size_t>(k - 1)].deps;
}

double kgd_series_energy_shift(const kgd_series* s, double lambda, int max_order) {
    if (!s || max_order < 0) {
        return std::nan("");
    }
    return s->series.energy_shift(lambda, static_cast<std::size_t>(max_order));
}

size_t kgd_series_warning_count(const kgd_series* s) {
    return s ? s->series.warnings.size() : 0;
}

const char* kgd_series_warning(const kgd_series* s, size_t index) {
    return s ? warning_at(s->series.warnings, index) : nullptr;
}

kgd_status kgd_series_table(const kgd_series* s, double m, kgd_table** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(s && out, "NULL argument");
        const auto& series = s->series;
        auto phi = kgd::perturb::corrected_wavefunction(series, m);
        auto psi = kgd::combine(series.chi, phi).samples;
        auto table = std::make_unique<kgd_table>();
        table->names = {"r", "chi", "phi", "psi"};
        table->columns = {node_values(series.grid), series.chi, std::move(phi), std::move(psi)};
        for (const auto& order : series.orders) {
            table->names.push_back("dW" + std::to_string(order.k));
            table->columns.push_back(order.dW);
        }
        *out = table.release();
    });
}

void kgd_series_free(kgd_series* s) {
    delete s;
}

kgd_status kgd_oracle_schrodinger(kgd_radial_fn potential, void* user, kgd_grid_spec grid, size_t k, double* out) {
    return guarded([&] {
        require(potential && out, "NULL argument");
        require(k > 0, "state count must be positive");
        const auto result =
            kgd::oracle::schrodinger_fd([potential, user](double r) { return potential(r, user); }, make_grid(grid), k);
        std::copy(result.eigenvalues.begin(), result.eigenvalues.end(), out);
    });
}

kgd_status kgd_oracle_kg_hulthen(double m, kgd_hulthen_pair pair, kgd_grid_spec grid, size_t k, double* energies,
                                 double* eigenvalues) {
    return fill_oracle(to_pair(pair), m, grid, k, energies, eigenvalues);
}

kgd_status kgd_oracle_kg_power(double m, kgd_power_pair pair, kgd_grid_spec grid, size_t k, double* energies,
                               double* eigenvalues) {
    return fill_oracle(to_pair(pair), m, grid, k, energies, eigenvalues);
}

kgd_status kgd_tridiagonal_smallest(const double* diagonal, const double* off_diagonal, size_t n, size_t k,
                                    double* out) {
    return guarded([&] {
        require(diagonal && out && n > 0 && (off_diagonal || n == 1), "NULL argument or empty matrix");
        kgd::oracle::TridiagonalSystem sys{{diagonal, diagonal + n}, {}};
        if (n > 1) {
            sys.off_diagonal.assign(off_diagonal, off_diagonal + n - 1);
        }
        const auto values = kgd::oracle::eigen_smallest(sys, k);
        std::copy(values.begin(), values.end(), out);
    });
}

double kgd_oracle_default_box(double m, double energy) {
    return kgd::oracle::default_box(m, energy);
}

kgd_status kgd_verify(int quick, double grid_scale, kgd_report** out) {
    if (out) {
        *out = nullptr;
    }
    return guarded([&] {
        require(out != nullptr, "output handle is NULL");
        kgd::verify::Options options;
        options.quick = quick != 0;
        options.grid_scale = grid_scale;
        *out = new kgd_report{kgd::verify::run(options)};
    });
}

size_t kgd_report_count(const kgd_report* r) {
    return r ? r->checks.size() : 0;
}

kgd_status kgd_report_check(const kgd_report* r, size_t index, kgd_check* out) {
    return guarded([&] {
        require(r && out && index < r->checks.size(), "NULL argument or index out of range");
        const auto& c = r->checks[index];
        *out = {c.group, c.name.c_str(), c.passed ? 1 : 0, c.value, c.tolerance, c.detail.c_str()};
    });
}

int kgd_report_all_passed(const kgd_report* r) {
    if (!r) {
        return 0;
    }
    for (const auto& c : r->checks) {
        if (!c.passed) {
            return 0;
        }
    }
    return 1;
}

void kgd_report_free(kgd_report* r) {
    delete r;
}

}  // extern "C"
