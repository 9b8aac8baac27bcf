#include "kgdecomp/errors.hpp"

namespace kgd {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::non_positive_radius: return "NonPositiveRadius";
        case Errc::out_of_grid_range: return "OutOfGridRange";
        case Errc::non_finite_value: return "NonFiniteValue";
        case Errc::overflow: return "Overflow";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::no_bound_state: return "NoBoundState";
        case Errc::vector_dominates: return "VectorDominates";
        case Errc::no_convergence: return "NoConvergence";
        case Errc::negative_oscillator: return "NegativeOscillator";
        case Errc::constraint_violated: return "ConstraintViolated";
        case Errc::non_normalizable_base: return "NonNormalizableBase";
        case Errc::complex_energy: return "ComplexEnergy";
        case Errc::non_finite_potential: return "NonFinitePotential";
        case Errc::io: return "IOError";
    }
    return "Unknown";
}

}  // namespace kgd
