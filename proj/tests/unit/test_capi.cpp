// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "kgdecomp/kgdecomp.h"

namespace {

const kgd_grid_spec kShortGrid{0.01, 10.0, 0.01};

double oscillator_w(double r, void*) {
    return r - 1.0 / r;
}

double oscillator_dw(double r, void*) {
    return 1.0 + 1.0 / (r * r);
}

double scaled_square(double r, void* user) {
    return *static_cast<double*>(user) * r * r;
}

double coulomb(double r, void*) {
    return -1.0 / r;
}

std::string name_of(const kgd_table* t, size_t c) {
    const char* n = kgd_table_column_name(t, c);
    return n ? n : "";
}

}  // namespace

TEST(CApi, StatusNames) {
    EXPECT_STREQ(kgd_status_name(KGD_OK), "Ok");
    EXPECT_STREQ(kgd_status_name(KGD_NO_BOUND_STATE), "NoBoundState");
    EXPECT_STREQ(kgd_status_name(KGD_VECTOR_DOMINATES), "VectorDominates");
    EXPECT_STREQ(kgd_status_name(KGD_IO_ERROR), "IOError");
    EXPECT_STREQ(kgd_status_name(KGD_INTERNAL_ERROR), "InternalError");
    EXPECT_STREQ(kgd_status_name(static_cast<kgd_status>(42)), "Unknown");
    EXPECT_STREQ(kgd_version(), "0.1.0");
}

TEST(CApi, HulthenSolveAndTables) {
    kgd_hulthen* h = nullptr;
    ASSERT_EQ(kgd_hulthen_solve(1.0, {1.25, 0.75, 1.0}, nullptr, &h), KGD_OK);
    EXPECT_STREQ(kgd_last_error(), "");
    kgd_hulthen_summary s{};
    ASSERT_EQ(kgd_hulthen_summary_get(h, &s), KGD_OK);
    EXPECT_NEAR(s.E, 23.0 / 41.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.delta, 1.0);
    EXPECT_EQ(s.exponent_sign, -1);
    EXPECT_LE(s.residual_nr, 1e-8);
    EXPECT_NEAR(s.deps, s.deps_expanded, 1e-12);
    ASSERT_EQ(kgd_hulthen_root_count(h), 1u);
    EXPECT_EQ(kgd_hulthen_root(h, 0), s.E);
    EXPECT_TRUE(std::isnan(kgd_hulthen_root(h, 5)));
    ASSERT_GE(kgd_hulthen_warning_count(h), 1u);
    EXPECT_NE(kgd_hulthen_warning(h, 0), nullptr);
    EXPECT_EQ(kgd_hulthen_warning(h, 99), nullptr);

    kgd_table* t = nullptr;
    ASSERT_EQ(kgd_hulthen_wavefunction(h, kShortGrid, 1, &t), KGD_OK);
    ASSERT_EQ(kgd_table_columns(t), 6u);
    ASSERT_EQ(kgd_table_rows(t), 1000u);
    const std::vector<std::string> names{"r", "chi", "phi", "psi", "chi_raw", "phi_raw"};
    for (size_t c = 0; c < names.size(); ++c) {
        EXPECT_EQ(name_of(t, c), names[c]);
    }
    EXPECT_EQ(kgd_table_column(t, 6), nullptr);
    const double* r = kgd_table_column(t, 0);
    const double* chi = kgd_table_column(t, 1);
    EXPECT_DOUBLE_EQ(r[0], 0.01);
    EXPECT_DOUBLE_EQ(r[999], 10.0);
    double top = 0.0;
    for (size_t i = 0; i < 1000; ++i) {
        top = std::max(top, std::abs(chi[i]));
    }
    EXPECT_EQ(top, 1.0);
    EXPECT_EQ(kgd_table_column(t, 4)[0], 1.0);  // raw amplitude starts at one
    kgd_table_free(t);

    ASSERT_EQ(kgd_hulthen_wavefunction(h, kShortGrid, 0, &t), KGD_OK);
    EXPECT_EQ(kgd_table_columns(t), 4u);
    kgd_table_free(t);
    kgd_hulthen_free(h);
}

TEST(CApi, FailuresSetLastError) {
    kgd_hulthen* h = reinterpret_cast<kgd_hulthen*>(0x1);
    EXPECT_EQ(kgd_hulthen_solve(1.0, {0.1, 0.0, 1.0}, nullptr, &h), KGD_NO_BOUND_STATE);
    EXPECT_EQ(h, nullptr);
    EXPECT_GT(std::strlen(kgd_last_error()), 0u);
    EXPECT_EQ(kgd_hulthen_solve(1.0, {0.5, 0.9, 1.0}, nullptr, &h), KGD_VECTOR_DOMINATES);
    EXPECT_EQ(kgd_hulthen_solve(1.0, {1.25, 0.75, 1.0}, nullptr, nullptr), KGD_INVALID_ARGUMENT);
    const kgd_grid_spec bad{1.0, 0.5, 0.1};
    EXPECT_EQ(kgd_hulthen_solve(1.0, {1.25, 0.75, 1.0}, &bad, &h), KGD_INVALID_ARGUMENT);
    kgd_hulthen_summary s{};
    EXPECT_EQ(kgd_hulthen_summary_get(nullptr, &s), KGD_INVALID_ARGUMENT);

    // The message is per thread.
    std::string other;
    std::thread([&] {
        kgd_hulthen* mine = nullptr;
        kgd_hulthen_solve(1.0, {1.25, 0.75, 1.0}, nullptr, &mine);
        other = kgd_last_error();
        kgd_hulthen_free(mine);
    }).join();
    EXPECT_EQ(other, "");
    EXPECT_GT(std::strlen(kgd_last_error()), 0u);

    kgd_hulthen_free(nullptr);
    kgd_table_free(nullptr);
    EXPECT_EQ(kgd_table_rows(nullptr), 0u);
}

TEST(CApi, Coulombic) {
    const kgd_power_pair pair{-1.0, std::sqrt(2.0), 2.0, 0.0, 0.0, 0.0};
    kgd_coulombic* c = nullptr;
    ASSERT_EQ(kgd_coulombic_solve(0, 0.5, pair, 0, nullptr, &c), KGD_OK);
    kgd_coulombic_summary s{};
    ASSERT_EQ(kgd_coulombic_summary_get(c, &s), KGD_OK);
    EXPECT_NEAR(s.eps, -0.25 + 3.0 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(s.iterations, 1);
    EXPECT_EQ(s.degenerate, 0);
    EXPECT_EQ(s.effective_pair.s1, pair.s1);
    EXPECT_EQ(kgd_coulombic_warning_count(c), 0u);

    kgd_table* t = nullptr;
    ASSERT_EQ(kgd_coulombic_wavefunction(c, kShortGrid, 1, &t), KGD_OK);
    EXPECT_EQ(kgd_table_columns(t), 3u);
    EXPECT_EQ(name_of(t, 2), "chi_raw");
    kgd_table_free(t);
    kgd_coulombic_free(c);

    double value = 0.0;
    ASSERT_EQ(kgd_coulombic_constraint(0.5, 0.5, pair, &value), KGD_OK);
    EXPECT_NEAR(value, 0.0, 1e-15);
    ASSERT_EQ(kgd_coulombic_energy(0, 0.5, 0.5, pair, &value), KGD_OK);
    EXPECT_NEAR(value, -0.25 + 3.0 * std::sqrt(2.0), 1e-14);
    EXPECT_EQ(kgd_coulombic_energy(0, 0.5, 0.5, {0.0, -4.0, 1.0, 0.0, 0.0, 0.0}, &value),
              KGD_CONSTRAINT_VIOLATED);
    EXPECT_EQ(kgd_coulombic_solve(0, 1.0, {1.0, 2.0, 3.0, 1.0, 2.0, 2.0}, 0, nullptr, &c), KGD_INVALID_ARGUMENT);

    // S = -V has no bound amplitude to tabulate.
    ASSERT_EQ(kgd_coulombic_solve(0, 1.0, {-0.5, 0.0, 0.25, 0.5, 0.0, -0.25}, 0, nullptr, &c), KGD_OK);
    ASSERT_EQ(kgd_coulombic_summary_get(c, &s), KGD_OK);
    EXPECT_EQ(s.degenerate, 1);
    EXPECT_EQ(kgd_coulombic_wavefunction(c, kShortGrid, 0, &t), KGD_INVALID_ARGUMENT);
    EXPECT_EQ(t, nullptr);
    kgd_coulombic_free(c);
}

TEST(CApi, SeriesFromCallbacks) {
    double scale = 1.0;
    const kgd_radial_fn dv[3] = {scaled_square, nullptr, nullptr};
    kgd_series* s = nullptr;
    ASSERT_EQ(kgd_series_run(0.5, oscillator_w, oscillator_dw, dv, 3, 0.01, &scale, {1e-3, 12.0, 1e-3}, &s),
              KGD_OK);
    EXPECT_EQ(kgd_series_order(s), 3);
    EXPECT_NEAR(kgd_series_deps(s, 1), 1.5, 1e-6);
    EXPECT_NEAR(kgd_series_deps(s, 2), -0.375, 1e-6);
    EXPECT_NEAR(kgd_series_deps(s, 3), 0.1875, 1e-6);
    EXPECT_TRUE(std::isnan(kgd_series_deps(s, 4)));
    EXPECT_NEAR(kgd_series_energy_shift(s, 0.01, 0), 3.0 * std::sqrt(1.01) - 3.0, 1e-8);
    EXPECT_DOUBLE_EQ(kgd_series_energy_shift(s, 0.01, 1), 0.01 * kgd_series_deps(s, 1));

    kgd_table* t = nullptr;
    ASSERT_EQ(kgd_series_table(s, 0.5, &t), KGD_OK);
    ASSERT_EQ(kgd_table_columns(t), 7u);
    EXPECT_EQ(name_of(t, 3), "psi");
    EXPECT_EQ(name_of(t, 4), "dW1");
    EXPECT_EQ(name_of(t, 6), "dW3");
    kgd_table_free(t);
    kgd_series_free(s);

    // The user pointer reaches the callbacks.
    scale = 2.0;
    ASSERT_EQ(kgd_series_run(0.5, oscillator_w, nullptr, dv, 1, 1.0, &scale, {1e-3, 12.0, 1e-3}, &s), KGD_OK);
    EXPECT_NEAR(kgd_series_deps(s, 1), 3.0, 2e-6);
    kgd_series_free(s);

    EXPECT_EQ(kgd_series_run(0.5, oscillator_w, nullptr, dv, 4, 1.0, &scale, {1e-3, 12.0, 1e-3}, &s),
              KGD_INVALID_ARGUMENT);
    EXPECT_EQ(kgd_series_run(0.5, nullptr, nullptr, dv, 1, 1.0, &scale, {1e-3, 12.0, 1e-3}, &s),
              KGD_INVALID_ARGUMENT);
}

TEST(CApi, SeriesFromPowerPairs) {
    const kgd_power_pair osc{0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    const kgd_power_pair correction{0.0, 0.0, 0.1, 0.0, 0.0, 0.0};
    kgd_series* s = nullptr;
    ASSERT_EQ(kgd_series_run_power(0.5, 0.5, osc, correction, 2, 1.0, {1e-3, 12.0, 1e-3}, &s), KGD_OK);
    // S^2 = 0.01 r^4: first order is <r^4> = Gamma(7/2)/Gamma(3/2) times 0.01.
    EXPECT_NEAR(kgd_series_deps(s, 1), 0.01 * 15.0 / 4.0, 1e-6);
    EXPECT_GE(kgd_series_warning_count(s), 1u);
    kgd_series_free(s);
}

TEST(CApi, Oracle) {
    double ev[2] = {};
    ASSERT_EQ(kgd_oracle_schrodinger(coulomb, nullptr, {0.0, 120.0, 1e-3}, 1, ev), KGD_OK);
    EXPECT_NEAR(ev[0], -0.25, 5e-4);

    const double d[3] = {2.0, 2.0, 2.0};
    const double e[2] = {-1.0, -1.0};
    ASSERT_EQ(kgd_tridiagonal_smallest(d, e, 3, 2, ev), KGD_OK);
    EXPECT_NEAR(ev[0], 2.0 - std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(ev[1], 2.0, 1e-14);
    EXPECT_EQ(kgd_tridiagonal_smallest(d, e, 3, 4, ev), KGD_INVALID_ARGUMENT);

    double energy = 0.0;
    double eigenvalue = 0.0;
    ASSERT_EQ(kgd_oracle_kg_hulthen(0.5, {1.25, 0.75, 1.0}, {0.0, 40.0, 2e-3}, 1, &energy, &eigenvalue), KGD_OK);
    EXPECT_NEAR(energy, 0.4873, 5e-4);
    EXPECT_NEAR(eigenvalue, energy * energy - 0.25, 1e-12);
    ASSERT_EQ(kgd_oracle_kg_power(0.5, {0.0, 0.0, 1.0, 0.0, 0.0, 0.0}, {0.0, 14.0, 2e-3}, 1, nullptr, &eigenvalue),
              KGD_OK);
    // 2m S + S^2 = r^2 + r^4 at m = 1/2; bounded below by the pure oscillator.
    EXPECT_GT(eigenvalue, 3.0);

    EXPECT_DOUBLE_EQ(kgd_oracle_default_box(1.0, 0.6), 50.0);
}

TEST(CApi, QuickVerifyReport) {
    kgd_report* r = nullptr;
    ASSERT_EQ(kgd_verify(1, 1.0, &r), KGD_OK);
    ASSERT_GT(kgd_report_count(r), 20u);
    kgd_check c{};
    for (size_t i = 0; i < kgd_report_count(r); ++i) {
        ASSERT_EQ(kgd_report_check(r, i, &c), KGD_OK);
        EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
        EXPECT_GE(c.group, 1);
        EXPECT_LE(c.group, 9);
    }
    EXPECT_EQ(kgd_report_all_passed(r), 1);
    EXPECT_EQ(kgd_report_check(r, kgd_report_count(r), &c), KGD_INVALID_ARGUMENT);
    kgd_report_free(r);
    EXPECT_EQ(kgd_verify(1, 0.0, &r), KGD_INVALID_ARGUMENT);
}
