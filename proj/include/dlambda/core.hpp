#ifndef DLAMBDA_CORE_HPP
#define DLAMBDA_CORE_HPP

// Parameter records and derived quantities for the closed-loop double-Lambda
// medium. All rates and Rabi frequencies are in units of the excited-state
// coherence decay rate (gamma31 = gamma41 = 1); time is in 1/Gamma and
// propagation is measured by the optical-depth coordinate zeta in [0, alpha].

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dlambda/error.hpp"
#include "dlambda/numerics.hpp"

namespace dlambda {

template <typename T = double>
using Complex = std::complex<T>;

/// Medium and strong-field configuration. Phases live inside the complex
/// Rabi frequencies.
template <typename T = double>
struct MediumParams
{
    T alpha{0};               // optical depth (probe and signal share it)
    T delta{0};               // signal-transition detuning
    T gamma21{0};             // ground-state dephasing
    Complex<T> omega_c{1};    // coupling field
    Complex<T> omega_d{1};    // driving field
};

/// Weak probe and signal Rabi amplitudes at one point of the medium.
template <typename T = double>
struct FieldPair
{
    Complex<T> probe{};
    Complex<T> signal{};
};

template <typename T = double>
struct DerivedQuantities
{
    T omega_sq;         // |Omega_c|^2 + |Omega_d|^2
    Complex<T> xi;      // i + 2 |Omega_c|^2 Delta / |Omega|^2
    T relative_phase;   // (phi_p - phi_c) - (phi_s - phi_d), in [0, 2pi)
};

/// Throws InvalidArgument unless alpha >= 0, gamma21 >= 0, all values are
/// finite and the strong fields do not both vanish.
template <typename T>
void validate(const MediumParams<T>& p)
{
    auto finite = [](const Complex<T>& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!std::isfinite(p.alpha) || !std::isfinite(p.delta) || !std::isfinite(p.gamma21)
        || !finite(p.omega_c) || !finite(p.omega_d))
        throw InvalidArgument("medium parameters must be finite");
    if (p.alpha < T(0))
        throw InvalidArgument("optical depth must be non-negative");
    if (p.gamma21 < T(0))
        throw InvalidArgument("ground-state dephasing must be non-negative");
    if (std::norm(p.omega_c) + std::norm(p.omega_d) == T(0))
        throw InvalidArgument("coupling and driving fields cannot both vanish");
}

template <typename T>
T omega_sq(const MediumParams<T>& p)
{
    return std::norm(p.omega_c) + std::norm(p.omega_d);
}

/// xi = i + 2 |Omega_c|^2 Delta / |Omega|^2; the imaginary part is exactly one.
template <typename T>
Complex<T> xi(const MediumParams<T>& p)
{
    const T w2 = omega_sq(p);
    if (w2 == T(0))
        throw InvalidArgument("|Omega|^2 = 0: coupling and driving fields cannot both vanish");
    return {T(2) * std::norm(p.omega_c) * p.delta / w2, T(1)};
}

/// Spatial rate -i / (2 xi) of the bright-mode exponential exp(-i zeta / (2 xi)).
template <typename T>
Complex<T> propagation_rate(const MediumParams<T>& p)
{
    const T x = xi(p).real();
    const T den = T(2) * (x * x + T(1));
    return {T(-1) / den, -x / den};
}

/// exp(-i zeta / (2 xi)).
template <typename T>
Complex<T> bright_mode_factor(const MediumParams<T>& p, T zeta)
{
    return std::exp(propagation_rate(p) * zeta);
}

/// e^{i angle}. Angles within rounding of a multiple of pi/2 map to the
/// exact phasor so that, e.g., std::numbers::pi yields exactly -1.
template <typename T>
Complex<T> unit_phasor(T angle)
{
    const T r = wrap_two_pi(angle);
    const T quarter = std::numbers::pi_v<T> / T(2);
    const T q = r / quarter;
    const T k = std::round(q);
    if (std::abs(q - k) <= T(8) * std::numeric_limits<T>::epsilon() * std::max(T(1), std::abs(angle) / quarter)) {
        switch (static_cast<int>(k) % 4) {
        case 0: return {T(1), T(0)};
        case 1: return {T(0), T(1)};
        case 2: return {T(-1), T(0)};
        default: return {T(0), T(-1)};
        }
    }
    return std::polar(T(1), r);
}

template <typename T>
T relative_phase(const MediumParams<T>& p, const FieldPair<T>& f)
{
    return wrap_two_pi((std::arg(f.probe) - std::arg(p.omega_c)) - (std::arg(f.signal) - std::arg(p.omega_d)));
}

template <typename T>
DerivedQuantities<T> derive(const MediumParams<T>& params, const FieldPair<T>& boundary)
{
    return {omega_sq(params), xi(params), relative_phase(params, boundary)};
}

struct PerturbativeReport
{
    bool ok = true;
    std::vector<std::string> violations;

    explicit operator bool() const { return ok; }
};

/// Checks |Omega_p| / |Omega_c| and |Omega_s| / |Omega_d| against the
/// threshold. A zero weak field always passes its check.
template <typename T>
PerturbativeReport validate_perturbative(const MediumParams<T>& params, const FieldPair<T>& boundary,
                                         T ratio_threshold = T(0.1))
{
    PerturbativeReport report;
    auto check = [&](const char* name, const Complex<T>& weak, const Complex<T>& strong) {
        const T w = std::abs(weak);
        if (w == T(0))
            return;
        const T s = std::abs(strong);
        const T ratio = s > T(0) ? w / s : std::numeric_limits<T>::infinity();
        if (!(ratio <= ratio_threshold)) {
            report.ok = false;
            report.violations.push_back(std::string(name) + " ratio " + std::to_string(ratio) + " exceeds "
                                        + std::to_string(ratio_threshold));
        }
    };
    check("|Omega_p|/|Omega_c|", boundary.probe, params.omega_c);
    check("|Omega_s|/|Omega_d|", boundary.signal, params.omega_d);
    return report;
}

/// Balanced drive |Omega_c| = |Omega_d| = drive with the loop phase carried
/// by the coupling field (phi_p = phi_s = phi_d = 0, phi_c = -phi_r).
template <typename T>
MediumParams<T> balanced_params(T alpha, T delta, T phi_r, T drive = T(1), T gamma21 = T(0))
{
    MediumParams<T> p;
    p.alpha = alpha;
    p.delta = delta;
    p.gamma21 = gamma21;
    p.omega_c = drive * std::conj(unit_phasor(phi_r));
    p.omega_d = {drive, T(0)};
    return p;
}

}  // namespace dlambda

#endif
