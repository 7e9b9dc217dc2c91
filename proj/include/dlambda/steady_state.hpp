#ifndef DLAMBDA_STEADY_STATE_HPP
#define DLAMBDA_STEADY_STATE_HPP

// Closed-form steady state of the double-Lambda medium with gamma21 = 0:
// first-order coherences, field propagation for arbitrary drive, the
// balanced-drive ratios, and transmission/phase extraction.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>

#include "dlambda/core.hpp"

namespace dlambda {

enum class Field { probe, signal };

template <typename T = double>
struct CoherenceState
{
    Complex<T> rho21{};
    Complex<T> rho31{};
    Complex<T> rho41{};
};

/// Largest coherence magnitude is below `bound` (first-order sanity check).
template <typename T>
bool within_perturbative_bound(const CoherenceState<T>& s, T bound = T(0.5))
{
    return std::abs(s.rho21) < bound && std::abs(s.rho31) < bound && std::abs(s.rho41) < bound;
}

template <typename T = double>
struct BalancedRatios
{
    Complex<T> probe;
    Complex<T> signal;
};

/// Field ratios Omega(zeta) / Omega(0) sampled on a uniform zeta grid.
template <typename T = double>
struct PropagationCurve
{
    using RealArray = Eigen::Array<T, Eigen::Dynamic, 1>;
    using ComplexArray = Eigen::Array<Complex<T>, Eigen::Dynamic, 1>;

    RealArray zeta;
    ComplexArray probe_ratio;
    ComplexArray signal_ratio;

    Eigen::Index size() const { return zeta.size(); }
    const ComplexArray& ratio(Field which) const { return which == Field::probe ? probe_ratio : signal_ratio; }
};

template <typename T = double>
struct TransmissionPhase
{
    T transmission;
    T phase;
};

template <typename T>
inline constexpr T zero_field_tolerance = T(1e-9);

namespace detail {

template <typename T>
void require_no_dephasing(const MediumParams<T>& p, const char* op)
{
    if (p.gamma21 != T(0))
        throw InvalidArgument(std::string(op)
                              + ": closed form requires gamma21 = 0; use the time-domain integrator "
                                "(dynamics) or steady_transfer for gamma21 > 0");
}

template <typename T>
void require_depth(const MediumParams<T>& p, T zeta)
{
    if (!(zeta >= T(0) && zeta <= p.alpha))
        throw InvalidArgument("zeta must lie in [0, alpha]");
}

}  // namespace detail

/// First-order steady-state coherences for gamma21 = 0, with
/// D = -[i |Omega_d|^2 + (2 Delta + i) |Omega_c|^2].
template <typename T>
CoherenceState<T> coherences_steady(const MediumParams<T>& params, const FieldPair<T>& fields)
{
    validate(params);
    detail::require_no_dephasing(params, "coherences_steady");
    const Complex<T> i(0, 1);
    const T c2 = std::norm(params.omega_c);
    const T d2 = std::norm(params.omega_d);
    const Complex<T> D = -(i * d2 + (T(2) * params.delta + i) * c2);
    if (D == Complex<T>(0))
        throw InvalidArgument("coherences_steady: vanishing denominator");

    const auto& oc = params.omega_c;
    const auto& od = params.omega_d;
    const auto& p = fields.probe;
    const auto& s = fields.signal;
    CoherenceState<T> out;
    out.rho21 = (p * std::conj(oc) * (T(2) * params.delta + i) + s * std::conj(od) * i) / D;
    out.rho31 = (p * d2 - s * oc * std::conj(od)) / D;
    out.rho41 = (s * c2 - p * std::conj(oc) * od) / D;
    return out;
}

/// Probe and signal at optical depth zeta for arbitrary incident fields and
/// drive (gamma21 = 0). Incident signal may be zero (four-wave-mixing
/// generation).
template <typename T>
FieldPair<T> propagate_general(const MediumParams<T>& params, const FieldPair<T>& incident, T zeta)
{
    validate(params);
    detail::require_no_dephasing(params, "propagate_general");
    detail::require_depth(params, zeta);
    if (zeta == T(0))
        return incident;

    const T c2 = std::norm(params.omega_c);
    const T d2 = std::norm(params.omega_d);
    const T w2 = c2 + d2;
    const Complex<T> cd = params.omega_c * std::conj(params.omega_d);
    const Complex<T> e = bright_mode_factor(params, zeta);
    const auto& p0 = incident.probe;
    const auto& s0 = incident.signal;

    FieldPair<T> out;
    out.probe = ((c2 * p0 + cd * s0) + (d2 * p0 - cd * s0) * e) / w2;
    out.signal = ((d2 * s0 + std::conj(cd) * p0) + (c2 * s0 - std::conj(cd) * p0) * e) / w2;
    return out;
}

namespace detail {

template <typename T>
BalancedRatios<T> balanced_ratios(const Complex<T>& phasor, const Complex<T>& e)
{
    const T half(0.5);
    const Complex<T> one(1);
    const Complex<T> u_bar = std::conj(phasor);
    return {half * ((one + u_bar) + (one - u_bar) * e), half * ((one + phasor) + (one - phasor) * e)};
}

}  // namespace detail

/// Ratios Omega(zeta)/Omega(0) for |Omega_c| = |Omega_d| and equal incident
/// magnitudes, as functions of the loop phase phi_r.
template <typename T>
BalancedRatios<T> propagate_balanced(T phi_r, const MediumParams<T>& params, T zeta)
{
    validate(params);
    detail::require_no_dephasing(params, "propagate_balanced");
    detail::require_depth(params, zeta);
    const T c = std::abs(params.omega_c);
    const T d = std::abs(params.omega_d);
    if (std::abs(c - d) > T(1e-12) * std::max(c, d))
        throw InvalidArgument("propagate_balanced requires |Omega_c| = |Omega_d|; use propagate_general");
    if (zeta == T(0))
        return {Complex<T>(1), Complex<T>(1)};
    return detail::balanced_ratios(unit_phasor(phi_r), bright_mode_factor(params, zeta));
}

namespace detail {

template <typename T>
PropagationCurve<T> make_grid(T alpha, Eigen::Index n_samples)
{
    if (n_samples < 2)
        throw InvalidArgument("trace_curve requires at least two samples");
    PropagationCurve<T> curve;
    const Eigen::Index n = alpha == T(0) ? 1 : n_samples;
    curve.zeta.resize(n);
    for (Eigen::Index k = 0; k < n; ++k)
        curve.zeta[k] = alpha * T(k) / T(n - 1 > 0 ? n - 1 : 1);
    curve.zeta[n - 1] = alpha;
    curve.probe_ratio.resize(n);
    curve.signal_ratio.resize(n);
    return curve;
}

}  // namespace detail

inline constexpr Eigen::Index default_curve_samples = 2000;

/// Balanced-drive phase-diagram trajectory over zeta in [0, alpha].
template <typename T>
PropagationCurve<T> trace_curve(T phi_r, const MediumParams<T>& params,
                                Eigen::Index n_samples = default_curve_samples)
{
    // validates drive balance once
    propagate_balanced(phi_r, params, T(0));
    auto curve = detail::make_grid(params.alpha, n_samples);
    const Complex<T> phasor = unit_phasor(phi_r);
    curve.probe_ratio[0] = curve.signal_ratio[0] = Complex<T>(1);
    for (Eigen::Index k = 1; k < curve.size(); ++k) {
        const auto r = detail::balanced_ratios(phasor, bright_mode_factor(params, curve.zeta[k]));
        curve.probe_ratio[k] = r.probe;
        curve.signal_ratio[k] = r.signal;
    }
    return curve;
}

/// Trajectory for arbitrary drive and incident fields. Both incident fields
/// must be non-zero so that the ratios are defined.
template <typename T>
PropagationCurve<T> trace_curve(const MediumParams<T>& params, const FieldPair<T>& incident,
                                Eigen::Index n_samples = default_curve_samples)
{
    if (incident.probe == Complex<T>(0) || incident.signal == Complex<T>(0))
        throw InvalidArgument("trace_curve: ratios need non-zero incident probe and signal");
    auto curve = detail::make_grid(params.alpha, n_samples);
    for (Eigen::Index k = 0; k < curve.size(); ++k) {
        const auto f = propagate_general(params, incident, curve.zeta[k]);
        curve.probe_ratio[k] = k == 0 ? Complex<T>(1) : f.probe / incident.probe;
        curve.signal_ratio[k] = k == 0 ? Complex<T>(1) : f.signal / incident.signal;
    }
    return curve;
}

/// |ratio|^2 and the principal phase in (-pi, pi]. Throws ZeroFieldError when
/// the ratio is exactly zero or not finite.
template <typename T>
TransmissionPhase<T> transmission_and_phase(const Complex<T>& ratio)
{
    if (ratio == Complex<T>(0) || !std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()))
        throw ZeroFieldError("phase undefined at a zero-field point");
    T phase = std::atan2(ratio.imag(), ratio.real());
    if (phase <= -std::numbers::pi_v<T>)
        phase = std::numbers::pi_v<T>;
    return {std::norm(ratio), phase};
}

/// Phase accumulated continuously along zeta. Samples with |ratio| below
/// zero_tol carry the last defined phase.
template <typename T>
Eigen::Array<T, Eigen::Dynamic, 1> unwrapped_phase(const PropagationCurve<T>& curve, Field which,
                                                   T zero_tol = zero_field_tolerance<T>)
{
    const auto& r = curve.ratio(which);
    Eigen::Array<T, Eigen::Dynamic, 1> phase(r.size());
    if (r.size() == 0)
        return phase;
    phase[0] = std::arg(r[0]);
    Complex<T> last = r[0];
    T last_phase = phase[0];
    for (Eigen::Index k = 1; k < r.size(); ++k) {
        if (std::abs(r[k]) >= zero_tol) {
            last_phase += std::arg(r[k] * std::conj(last));
            last = r[k];
        }
        phase[k] = last_phase;
    }
    return phase;
}

/// Unwrapped phase at the medium exit.
template <typename T>
T terminal_unwrapped_phase(const PropagationCurve<T>& curve, Field which)
{
    const auto ph = unwrapped_phase(curve, which);
    return ph[ph.size() - 1];
}

}  // namespace dlambda

#endif
