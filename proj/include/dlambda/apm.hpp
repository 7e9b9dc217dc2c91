#ifndef DLAMBDA_APM_HPP
#define DLAMBDA_APM_HPP

// All-optical phase modulation on the balanced drive: loop phases that put
// the transmitted probe on the negative real (pi shift) or negative imaginary
// (pi/2 shift) axis, detuning optimization of the resulting transmission, and
// the phase contrast between running with and without the signal field.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dlambda/phase_jump.hpp"
#include "dlambda/steady_state.hpp"

namespace dlambda {

enum class PhaseTarget { pi, half_pi };

inline const char* to_string(PhaseTarget t) { return t == PhaseTarget::pi ? "pi" : "half_pi"; }

template <typename T = double>
struct ApmContrast
{
    T phase_with;
    T phase_without;
    T contrast;   // |wrapped difference|, in [0, pi]
};

template <typename T = double>
struct ApmOperatingPoint
{
    T alpha;
    T delta;
    T phi_r;
    PhaseTarget target;
    T transmission_with_signal;
    T transmission_without_signal;
    T phase_with_signal;
    T phase_without_signal;
    T apm_contrast;
};

template <typename T = double>
struct DetuningRange
{
    T lo = T(0.5);
    T hi = T(60);
    T scan_step = T(0.05);
};

template <typename T = double>
struct ApmOptimization
{
    ApmOperatingPoint<T> best;
    std::vector<ApmOperatingPoint<T>> local_maxima;   // ascending in delta
};

namespace detail {

template <typename T>
Complex<T> terminal_probe_ratio(T alpha, T delta, T phi_r)
{
    return propagate_balanced(phi_r, balanced_params(alpha, delta, T(0)), alpha).probe;
}

}  // namespace detail

/// Loop phase in [0, 2pi) that rotates the transmitted probe onto the
/// negative real axis. Throws NoSolution when sin(I) = 0 or when the terminal
/// point lands on the positive real axis instead.
template <typename T>
T phi_r_for_pi_shift(T alpha, T delta)
{
    if (!(alpha > T(0)))
        throw NoSolution("pi shift needs a medium of positive optical depth");
    const auto [R, I] = loop_exponents(alpha, delta);
    const T s = std::sin(I);
    if (std::abs(s) < T(1e-14))
        throw NoSolution("pi shift undefined: sin(I) = 0");
    const T phi = wrap_two_pi(T(2) * std::atan((std::cos(I) - std::exp(-R)) / s));
    if (!(detail::terminal_probe_ratio(alpha, delta, phi).real() < T(0)))
        throw NoSolution("terminal probe lies on the positive real axis (zero phase, not pi)");
    return phi;
}

/// All loop phases in [0, 2pi) with Re(terminal probe) = 0 and Im < 0,
/// located by bracketing on `brackets` uniform subintervals.
template <typename T>
std::vector<T> half_pi_phases(T alpha, T delta, int brackets = 64)
{
    std::vector<T> roots;
    if (!(alpha > T(0)))
        return roots;
    auto re = [&](T phi) { return detail::terminal_probe_ratio(alpha, delta, phi).real(); };
    const T h = two_pi<T> / T(brackets);
    for (int k = 0; k < brackets; ++k) {
        const T a = h * T(k);
        const T b = k + 1 == brackets ? two_pi<T> : h * T(k + 1);
        // a root sitting exactly on b is picked up by the next bracket
        if (re(b) == T(0) && k + 1 < brackets)
            continue;
        const auto root = brent_root(re, a, b, T(1e-15));
        if (!root)
            continue;
        const T phi = wrap_two_pi(*root);
        if (detail::terminal_probe_ratio(alpha, delta, phi).imag() < T(0))
            roots.push_back(phi);
    }
    return roots;
}

/// Highest-transmission loop phase reaching the negative imaginary axis.
template <typename T>
T phi_r_for_half_pi_shift(T alpha, T delta)
{
    const auto roots = half_pi_phases(alpha, delta);
    if (roots.empty())
        throw NoSolution("no loop phase puts the terminal probe on the negative imaginary axis");
    T best = roots.front();
    T best_t = -T(1);
    for (T phi : roots) {
        const T t = std::norm(detail::terminal_probe_ratio(alpha, delta, phi));
        if (t > best_t) {
            best_t = t;
            best = phi;
        }
    }
    return best;
}

template <typename T>
T phi_r_for_shift(T alpha, T delta, PhaseTarget target)
{
    return target == PhaseTarget::pi ? phi_r_for_pi_shift(alpha, delta) : phi_r_for_half_pi_shift(alpha, delta);
}

/// Probe phase at the exit for two incident configurations sharing the same
/// drive; contrast is the wrapped phase difference.
template <typename T>
ApmContrast<T> apm_contrast(const MediumParams<T>& params, const FieldPair<T>& with,
                            const FieldPair<T>& without)
{
    const auto out_with = propagate_general(params, with, params.alpha);
    const auto out_without = propagate_general(params, without, params.alpha);
    const T ph_with = transmission_and_phase(Complex<T>(out_with.probe / with.probe)).phase;
    const T ph_without = transmission_and_phase(Complex<T>(out_without.probe / without.probe)).phase;
    return {ph_with, ph_without, std::abs(wrap_pi(ph_with - ph_without))};
}

/// Balanced drive, equal unit incident fields versus the signal switched off.
template <typename T>
ApmContrast<T> apm_contrast(T alpha, T delta, T phi_r)
{
    const auto params = balanced_params(alpha, delta, phi_r);
    return apm_contrast(params, FieldPair<T>{Complex<T>(1), Complex<T>(1)},
                        FieldPair<T>{Complex<T>(1), Complex<T>(0)});
}

template <typename T>
ApmOperatingPoint<T> operating_point(T alpha, T delta, T phi_r, PhaseTarget target)
{
    const auto params = balanced_params(alpha, delta, phi_r);
    const auto with = propagate_general(params, FieldPair<T>{Complex<T>(1), Complex<T>(1)}, alpha);
    const auto without = propagate_general(params, FieldPair<T>{Complex<T>(1), Complex<T>(0)}, alpha);
    const auto c = apm_contrast(alpha, delta, phi_r);
    return {alpha, delta, phi_r, target, std::norm(with.probe), std::norm(without.probe),
            c.phase_with, c.phase_without, c.contrast};
}

template <typename T>
ApmOperatingPoint<T> operating_point(T alpha, T delta, PhaseTarget target)
{
    return operating_point(alpha, delta, phi_r_for_shift(alpha, delta, target), target);
}

/// Constrained probe transmission at (alpha, delta), or nullopt inside an
/// infeasible zone.
template <typename T>
std::optional<T> constrained_transmission(T alpha, T delta, PhaseTarget target)
{
    try {
        const T phi = phi_r_for_shift(alpha, delta, target);
        return std::norm(detail::terminal_probe_ratio(alpha, delta, phi));
    } catch (const NoSolution&) {
        return std::nullopt;
    }
}

/// Scans delta over the range, then refines every local maximum of the
/// constrained probe transmission by golden-section search to `tol`.
template <typename T>
ApmOptimization<T> optimize_detuning(T alpha, PhaseTarget target, DetuningRange<T> range = {},
                                     T tol = T(1e-3))
{
    if (!(range.hi > range.lo) || !(range.scan_step > T(0)))
        throw InvalidArgument("detuning range must be non-empty with a positive scan step");
    const auto n = static_cast<std::size_t>(std::floor((range.hi - range.lo) / range.scan_step + T(1e-9))) + 1;
    const T lowest = std::numeric_limits<T>::lowest();
    auto objective = [&](T d) { return constrained_transmission(alpha, d, target).value_or(lowest); };

    std::vector<T> grid(n);
    std::vector<T> value(n);
    for (std::size_t j = 0; j < n; ++j) {
        grid[j] = std::min(range.lo + range.scan_step * T(j), range.hi);
        value[j] = objective(grid[j]);
    }

    ApmOptimization<T> result;
    bool found = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (value[j] == lowest)
            continue;
        const T left = j > 0 ? value[j - 1] : lowest;
        const T right = j + 1 < n ? value[j + 1] : lowest;
        if (!(value[j] > left && value[j] >= right))
            continue;
        const T a = j > 0 ? grid[j - 1] : grid[j];
        const T b = j + 1 < n ? grid[j + 1] : grid[j];
        T d_opt = grid[j];
        if (b > a) {
            const auto [x, fx] = golden_section_max(objective, a, b, tol);
            if (fx >= value[j])
                d_opt = x;
        }
        auto point = operating_point(alpha, d_opt, target);
        result.local_maxima.push_back(point);
        if (!found || point.transmission_with_signal > result.best.transmission_with_signal) {
            result.best = point;
            found = true;
        }
    }
    if (!found)
        throw NoSolution("no feasible detuning in [" + std::to_string(range.lo) + ", " + std::to_string(range.hi)
                         + "] for the " + to_string(target) + " target");
    return result;
}

}  // namespace dlambda

#endif
