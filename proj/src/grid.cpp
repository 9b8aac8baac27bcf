#include "kgdecomp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgdecomp/errors.hpp"

namespace kgd {

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t n_nodes)
    : r_min_(r_min), r_max_(r_max), h_(0.0) {
    if (!std::isfinite(r_min) || !std::isfinite(r_max) || r_min <= 0.0) {
        fail(Errc::invalid_argument, "grid requires finite 0 < r_min");
    }
    if (r_max <= r_min) {
        fail(Errc::invalid_argument, "grid requires r_max > r_min");
    }
    if (n_nodes < 3) {
        fail(Errc::invalid_argument, "grid requires at least 3 nodes");
    }
    h_ = (r_max - r_min) / static_cast<double>(n_nodes - 1);
    nodes_.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes_[i] = r_min + static_cast<double>(i) * h_;
    }
    nodes_.back() = r_max;
}

RadialGrid RadialGrid::with_spacing(double r_min, double r_max, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        fail(Errc::invalid_argument, "grid spacing must be positive");
    }
    if (!(r_max > r_min)) {
        fail(Errc::invalid_argument, "grid requires r_max > r_min");
    }
    const double panels = std::round((r_max - r_min) / h);
    if (panels > 5.0e8) {
        fail(Errc::invalid_argument, "grid too large: " + std::to_string(panels) + " panels");
    }
    const auto n = static_cast<std::size_t>(std::max(2.0, panels)) + 1;
    return RadialGrid(r_min, r_max, n);
}

RadialGrid RadialGrid::from_origin(double h, double r_max) {
    if (!(h > 0.0) || !std::isfinite(h) || !(r_max > h)) {
        fail(Errc::invalid_argument, "origin grid requires 0 < h < r_max");
    }
    const double count = std::ceil(r_max / h - 1e-9);
    if (count > 5.0e8) {
        fail(Errc::invalid_argument, "grid too large: " + std::to_string(count) + " nodes");
    }
    const auto n = std::max<std::size_t>(3, static_cast<std::size_t>(count));
    return RadialGrid(h, h * static_cast<double>(n), n);
}

std::size_t RadialGrid::locate(double r) const {
    if (r < r_min_ || r > r_max_) {
        fail(Errc::out_of_grid_range, "r = " + std::to_string(r) + " outside [" +
                                          std::to_string(r_min_) + ", " + std::to_string(r_max_) + "]");
    }
    auto idx = static_cast<std::size_t>((r - r_min_) / h_);
    return std::min(idx, nodes_.size() - 2);
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    }
    return out;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) {
        return out;
    }
    if (n == 2) {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (i % 2 == 0) {
            out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else if (i + 1 < n) {
            out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
        } else {
            out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
        }
    }
    return out;
}

double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) {
        return 0.0;
    }
    if (n == 2) {
        return 0.5 * h * (f[0] + f[1]);
    }
    const std::size_t last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < last; ++i) {
        (i % 2 == 1 ? odd : even) += f[i];
    }
    double total = h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[last]);
    if (last != n - 1) {
        total += h / 12.0 * (-f[n - 3] + 8.0 * f[n - 2] + 5.0 * f[n - 1]);
    }
    return total;
}

}  // namespace kgd
