#pragma once

#include <string>
#include <vector>

namespace kgd::verify {

/// Outcome of one cross-validation check.
struct Check {
    int group = 0;  // checks sharing a group belong to one acceptance criterion
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured error / ratio / slope
    double tolerance = 0.0;  // threshold `value` is compared against
    std::string detail;
};

struct Options {
    /// Fewer random draws and coarser oracle grids; every check still runs.
    bool quick = false;
    /// Multiplies the default grid density of the oracle checks.
    double grid_scale = 1.0;
    /// Run only the checks of this group (1..9); 0 runs all of them.
    int group = 0;
};

constexpr int kGroupCount = 9;

/// Closed forms vs finite-difference oracle vs Riccati residuals.  Checks run
/// concurrently; the result order is fixed.
std::vector<Check> run(const Options& options = {});

}  // namespace kgd::verify
