#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kgdecomp/errors.hpp"

// Asserts that `stmt` throws kgd::Error carrying `expected_code`.
#define EXPECT_ERRC(stmt, expected_code)                                                   \
    do {                                                                          \
        try {                                                                     \
            stmt;                                                                 \
            ADD_FAILURE() << "expected " << kgd::errc_name(expected_code) << ", no throw"; \
        } catch (const kgd::Error& e) {                                           \
            EXPECT_EQ(e.code(), expected_code) << e.what();                                \
        }                                                                         \
    } while (0)

namespace testing_support {

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support
