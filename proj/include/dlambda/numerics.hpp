#ifndef DLAMBDA_NUMERICS_HPP
#define DLAMBDA_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

namespace dlambda {

template <typename T>
inline constexpr T two_pi = T(2) * std::numbers::pi_v<T>;

/// Reduces an angle into [0, 2pi).
template <typename T>
T wrap_two_pi(T angle)
{
    T r = std::fmod(angle, two_pi<T>);
    if (r < T(0))
        r += two_pi<T>;
    // fmod of a tiny negative value can round up to exactly 2pi
    if (r >= two_pi<T>)
        r = T(0);
    return r;
}

/// Reduces an angle into (-pi, pi].
template <typename T>
T wrap_pi(T angle)
{
    T r = wrap_two_pi(angle);
    if (r > std::numbers::pi_v<T>)
        r -= two_pi<T>;
    return r;
}

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Returns (argmax, max).
template <typename T, typename F>
std::pair<T, T> golden_section_max(F&& f, T lo, T hi, T tol)
{
    const T inv_phi = (std::sqrt(T(5)) - T(1)) / T(2);
    T a = lo;
    T b = hi;
    T c = b - inv_phi * (b - a);
    T d = a + inv_phi * (b - a);
    T fc = f(c);
    T fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const T x = (a + b) / T(2);
    const T fx = f(x);
    if (fx >= fc && fx >= fd)
        return {x, fx};
    return fc >= fd ? std::pair<T, T>{c, fc} : std::pair<T, T>{d, fd};
}

/// Golden-section minimization; see golden_section_max.
template <typename T, typename F>
std::pair<T, T> golden_section_min(F&& f, T lo, T hi, T tol)
{
    auto [x, fx] = golden_section_max([&](T v) { return -f(v); }, lo, hi, tol);
    return {x, -fx};
}

/// Brent's root finder on a sign-changing bracket. Returns nullopt when
/// f(lo) and f(hi) have the same sign.
template <typename T, typename F>
std::optional<T> brent_root(F&& f, T lo, T hi, T xtol, int max_iter = 200)
{
    T a = lo, b = hi;
    T fa = f(a), fb = f(b);
    if (fa == T(0))
        return a;
    if (fb == T(0))
        return b;
    if ((fa > T(0)) == (fb > T(0)))
        return std::nullopt;

    T c = a, fc = fa;
    T d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > T(0)) == (fc > T(0))) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const T tol = T(2) * std::numeric_limits<T>::epsilon() * std::abs(b) + xtol / T(2);
        const T m = (c - b) / T(2);
        if (std::abs(m) <= tol || fb == T(0))
            return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            T p, q, r;
            const T s = fb / fa;
            if (a == c) {
                p = T(2) * m * s;
                q = T(1) - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (T(2) * m * q * (q - r) - (b - a) * (r - T(1)));
                q = (q - T(1)) * (r - T(1)) * (s - T(1));
            }
            if (p > T(0))
                q = -q;
            else
                p = -p;
            if (T(2) * p < std::min(T(3) * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > T(0) ? tol : -tol);
        fb = f(b);
    }
    return b;
}

}  // namespace dlambda

#endif
