#ifndef DLAMBDA_PHASE_JUMP_HPP
#define DLAMBDA_PHASE_JUMP_HPP

// Phase-jump analysis for the balanced drive: critical optical depth and the
// loop phases at which the probe or signal trajectory passes through the
// origin, plus numeric zero detection on traced curves.
//
// With E = exp(R - iI) the bright-mode factor at depth alpha,
//   R = -(alpha/2) / (Delta^2 + 1),  I = (alpha/2) Delta / (Delta^2 + 1).
// Negative detuning conjugates the dynamics; the probe and signal jump phases
// then swap roles.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "dlambda/steady_state.hpp"

namespace dlambda {

template <typename T = double>
struct LoopExponents
{
    T R;
    T I;
};

template <typename T>
LoopExponents<T> loop_exponents(T alpha, T delta)
{
    const T den = delta * delta + T(1);
    return {-(alpha / T(2)) / den, (alpha / T(2)) * delta / den};
}

template <typename T = double>
struct JumpSolution
{
    int n;
    T alpha_c;
    T phi_pj;
    T phi_sj;
};

namespace detail {

template <typename T>
void require_jump_args(T delta, int n)
{
    if (!std::isfinite(delta) || delta == T(0))
        throw InvalidArgument("phase jump requires a finite non-zero detuning");
    if (n < 1 || n % 2 == 0)
        throw InvalidArgument("phase-jump branch index must be a positive odd integer");
}

// sin(n pi / 2) for odd n, exactly
inline int odd_quarter_sine(int n) { return n % 4 == 1 ? 1 : -1; }

template <typename T>
T jump_phase(T delta, int n, int sign)
{
    require_jump_args(delta, n);
    const T s = T(sign * odd_quarter_sine(n)) * (delta > T(0) ? T(1) : T(-1));
    const T mag = std::exp(T(n) * std::numbers::pi_v<T> / (T(2) * std::abs(delta)));
    return wrap_two_pi(T(2) * std::atan(s * mag));
}

}  // namespace detail

/// Optical depth at which the jump trajectory of branch n reaches the origin.
template <typename T>
T critical_depth(T delta, int n = 1)
{
    detail::require_jump_args(delta, n);
    return T(n) * std::numbers::pi_v<T> * (delta * delta + T(1)) / std::abs(delta);
}

/// Loop phase in [0, 2pi) at which the probe vanishes at critical_depth.
template <typename T>
T jump_phase_probe(T delta, int n = 1)
{
    return detail::jump_phase(delta, n, -1);
}

/// Loop phase in [0, 2pi) at which the signal vanishes at critical_depth.
template <typename T>
T jump_phase_signal(T delta, int n = 1)
{
    return detail::jump_phase(delta, n, +1);
}

template <typename T>
JumpSolution<T> solve_jump(T delta, int n = 1)
{
    return {n, critical_depth(delta, n), jump_phase_probe(delta, n), jump_phase_signal(delta, n)};
}

namespace detail {

template <typename T>
Complex<T> lagrange_eval(const T* x, const Complex<T>* y, int m, T at)
{
    Complex<T> sum(0);
    for (int j = 0; j < m; ++j) {
        T w(1);
        for (int k = 0; k < m; ++k)
            if (k != j)
                w *= (at - x[k]) / (x[j] - x[k]);
        sum += w * y[j];
    }
    return sum;
}

}  // namespace detail

/// Every zeta at which |ratio| reaches a local minimum below `tol`. Each grid
/// minimum is refined by minimizing |p(zeta)| of the complex polynomial
/// through the neighbouring samples (cubic when four points are available).
template <typename T>
std::vector<T> detect_zero_crossings(const PropagationCurve<T>& curve, Field which,
                                     T tol = zero_field_tolerance<T>)
{
    std::vector<T> zeros;
    const auto& r = curve.ratio(which);
    const Eigen::Index n = r.size();
    if (n < 3)
        return zeros;
    const Eigen::Array<T, Eigen::Dynamic, 1> mag = r.abs();

    for (Eigen::Index k = 1; k < n; ++k) {
        const bool last = k == n - 1;
        if (!(mag[k] < mag[k - 1] && (last || mag[k] <= mag[k + 1])))
            continue;
        if (mag[k] == T(0)) {
            zeros.push_back(curve.zeta[k]);
            continue;
        }
        // stencil: k-1, k, k+1 plus the next point on the side of the smaller neighbour
        std::array<Eigen::Index, 4> idx{};
        int m = 0;
        const Eigen::Index lo = last ? k - 2 : k - 1;
        const Eigen::Index hi = last ? k : k + 1;
        for (Eigen::Index j = lo; j <= hi; ++j)
            idx[m++] = j;
        const bool right_smaller = !last && mag[k + 1] < mag[k - 1];
        if (right_smaller && hi + 1 < n)
            idx[m++] = hi + 1;
        else if (lo - 1 >= 0)
            idx[m++] = lo - 1;
        else if (hi + 1 < n)
            idx[m++] = hi + 1;

        std::array<T, 4> xs{};
        std::array<Complex<T>, 4> ys{};
        for (int j = 0; j < m; ++j) {
            xs[j] = curve.zeta[idx[j]];
            ys[j] = r[idx[j]];
        }
        const T a = curve.zeta[k - 1];
        const T b = curve.zeta[last ? k : k + 1];
        auto abs2 = [&](T z) { return std::norm(detail::lagrange_eval(xs.data(), ys.data(), m, z)); };
        const T span = b - a;
        auto [z_min, v_min] = golden_section_min(abs2, a, b, span * T(1e-12));
        if (std::sqrt(std::max(v_min, T(0))) < tol)
            zeros.push_back(z_min);
    }
    return zeros;
}

/// First zero crossing, if any.
template <typename T>
std::optional<T> detect_zero_crossing(const PropagationCurve<T>& curve, Field which,
                                      T tol = zero_field_tolerance<T>)
{
    const auto zeros = detect_zero_crossings(curve, which, tol);
    if (zeros.empty())
        return std::nullopt;
    return zeros.front();
}

/// Difference of terminal unwrapped phases at phi_r = center +/- half_width.
/// Large values signal a phase jump between the two loop phases.
template <typename T>
T terminal_phase_step(const MediumParams<T>& params, T center, T half_width, Field which,
                      Eigen::Index n_samples = default_curve_samples)
{
    const T above = terminal_unwrapped_phase(trace_curve(center + half_width, params, n_samples), which);
    const T below = terminal_unwrapped_phase(trace_curve(center - half_width, params, n_samples), which);
    return above - below;
}

}  // namespace dlambda

#endif
