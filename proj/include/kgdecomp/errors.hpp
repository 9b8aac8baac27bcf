#pragma once

#include <stdexcept>
#include <string>

namespace kgd {

/// Typed failure categories shared by every solver.  The C API maps each one
/// onto a stable integer status code.
enum class Errc {
    invalid_argument,
    non_positive_radius,
    out_of_grid_range,
    non_finite_value,
    overflow,
    length_mismatch,
    no_bound_state,
    vector_dominates,
    no_convergence,
    negative_oscillator,
    constraint_violated,
    non_normalizable_base,
    complex_energy,
    non_finite_potential,
    io,
};

/// CamelCase name used in diagnostics, e.g. "NoBoundState".
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(detail), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace kgd
