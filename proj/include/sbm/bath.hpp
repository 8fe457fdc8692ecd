// Model parameters and the power-law bath spectral density
//
// All frequencies are measured in units of the cutoff ω_c, which is fixed to 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "sbm/errors.hpp"

namespace sbm {

inline constexpr double kOmegaC = 1.0;
inline constexpr double kDefaultOmegaS = 0.01;

struct BathSpec {
    double s{1.0};                // spectral exponent, 0 < s <= 1
    double alpha{0.0};            // dimensionless coupling
    double omega_s{kDefaultOmegaS}; // auxiliary scale (ω_c units)
    double omega_c{kOmegaC};

    // α ω_s^{1-s}: the only combination of α and ω_s that enters the physics.
    double effective_coupling() const noexcept {
        return alpha * std::pow(omega_s, 1.0 - s);
    }
};

struct SystemSpec {
    double delta{0.1}; // bare tunneling Δ (ω_c units), 0 < Δ < 1
};

// J(ω) = 2 α ω_s^{1-s} ω^s θ(ω_c - ω)
inline double spectral_density(double omega, const BathSpec& bath) {
    if (omega < 0.0 || std::isnan(omega))
        throw DomainError("spectral_density: omega must be non-negative");
    if (omega >= bath.omega_c) return 0.0;
    if (omega == 0.0) return 0.0;
    return 2.0 * bath.effective_coupling() * std::pow(omega, bath.s);
}

// ∫_a^b J(ω) dω for 0 <= a <= b, exact power-law antiderivative.
inline double spectral_weight(double a, double b, const BathSpec& bath) {
    if (a < 0.0 || b < a) throw DomainError("spectral_weight: need 0 <= a <= b");
    a = std::min(a, bath.omega_c);
    b = std::min(b, bath.omega_c);
    const double p = bath.s + 1.0;
    return 2.0 * bath.effective_coupling() * (std::pow(b, p) - std::pow(a, p)) / p;
}

// Bath specification as read from user input, before defaults are applied.
struct BathInput {
    double s{1.0};
    double alpha{0.0};
    std::optional<double> omega_s;
};

inline std::pair<BathSpec, SystemSpec> validate(const BathSpec& bath, const SystemSpec& sys) {
    if (!(bath.s > 0.0) || !(bath.s <= 1.0))
        throw ValidationError("s", "s out of range: need 0 < s <= 1, got " + std::to_string(bath.s));
    if (!(bath.alpha >= 0.0) || !std::isfinite(bath.alpha))
        throw ValidationError("alpha", "alpha out of range: need alpha >= 0");
    if (!(bath.omega_s > 0.0) || !std::isfinite(bath.omega_s))
        throw ValidationError("omega_s", "omega_s out of range: need omega_s > 0");
    if (bath.omega_c != kOmegaC)
        throw ValidationError("omega_c", "omega_c is the unit of frequency and must equal 1");
    if (!(sys.delta > 0.0) || !(sys.delta < kOmegaC))
        throw ValidationError("delta", "delta out of range: need 0 < delta < 1 (units of omega_c)");
    return {bath, sys};
}

inline std::pair<BathSpec, SystemSpec> validate(const BathInput& in, const SystemSpec& sys) {
    BathSpec bath;
    bath.s = in.s;
    bath.alpha = in.alpha;
    bath.omega_s = in.omega_s.value_or(kDefaultOmegaS);
    return validate(bath, sys);
}

} // namespace sbm
