#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "grnconv/errors.hpp"

namespace grnconv::special {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Mean and variance of a normal law. The variance must be positive.
struct NormalParams {
    double mu = 0.0;
    double v = 1.0;

    NormalParams() = default;
    NormalParams(double mean, double variance);

    [[nodiscard]] double sd() const { return std::sqrt(v); }
    [[nodiscard]] double standardize(double x) const { return (x - mu) / sd(); }
};

/// Default tolerances; callers may override per call.
struct Tolerances {
    double root = 1e-12;
    double quadrature = 1e-10;
};

// Standard normal.
double phi(double x);
/// log Phi(x), accurate far into the lower tail where Phi itself underflows.
double log_phi(double x);
double pdf(double x);
double log_pdf(double x);
/// Inverse of phi on (0,1); throws DomainError outside.
double phi_inv(double p);
/// x with log Phi(x) = log_p, for log_p < 0; reaches far below the range of phi_inv.
double phi_inv_log(double log_p);
/// Mills ratio (1 - Phi(t)) / N(t).
double mills_ratio(double t);

// General normal, x may be +-infinity.
double normal_cdf(const NormalParams& p, double x);
double normal_sf(const NormalParams& p, double x);
double normal_pdf(const NormalParams& p, double x);
double log_normal_pdf(const NormalParams& p, double x);
double log_normal_cdf(const NormalParams& p, double x);
double log_normal_sf(const NormalParams& p, double x);
/// Phi_{mu,v}(b) - Phi_{mu,v}(a) for a <= b without cancellation in either tail.
double normal_cdf_diff(const NormalParams& p, double a, double b);
/// log of normal_cdf_diff; -inf when a >= b.
double log_normal_cdf_diff(const NormalParams& p, double a, double b);

namespace detail {

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod15(F& f, double a, double b) {
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * wgk[7];
    double gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double s = f(center - dx) + f(center + dx);
        kronrod += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The interval is first split at the given breakpoints (clipped to
/// [a, b]); the segment with the largest error estimate is bisected until
/// the summed estimate drops below tol. Throws ConvergenceError when
/// max_segments is exhausted first.
template <typename F>
double integrate(F&& f, double a, double b, double tol, std::span<const double> breakpoints,
                 std::size_t max_segments = 4000) {
    if (!(a <= b)) throw DomainError("integrate: requires a <= b");
    if (a == b) return 0.0;

    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Segment> work;
    double total = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto seg = detail::gauss_kronrod15(f, cuts[i], cuts[i + 1]);
        total += seg.value;
        error += seg.error;
        work.push(seg);
    }
    while (!(error <= tol)) {
        if (!std::isfinite(error)) throw ConvergenceError("integrate: non-finite integrand");
        if (work.size() >= max_segments)
            throw ConvergenceError("integrate: subdivision budget exhausted");
        auto worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw ConvergenceError("integrate: interval cannot be subdivided further");
        auto left = detail::gauss_kronrod15(f, worst.a, mid);
        auto right = detail::gauss_kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    for (; !work.empty(); work.pop()) total += work.top().value;
    return total;
}

template <typename F>
double integrate(F&& f, double a, double b, double tol = Tolerances{}.quadrature) {
    return integrate(std::forward<F>(f), a, b, tol, std::span<const double>{});
}

/// Bracketing root finder (Brent: bisection with secant and inverse
/// quadratic steps). Returns x inside [lo, hi] once the bracket is no wider
/// than tol or f(x) == 0. Infinite residuals are accepted and force a
/// bisection step. Throws BracketError when the endpoint signs agree.
template <typename F>
double find_root(F&& f, double lo, double hi, double tol = Tolerances{}.root,
                 int max_iter = 1000) {
    if (lo > hi) std::swap(lo, hi);
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (std::isnan(fa) || std::isnan(fb)) throw BracketError("find_root: NaN residual at bracket");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw BracketError("find_root: residual has the same sign at both ends");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::signbit(fb) == std::signbit(fc)) {
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
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;

        const bool finite = std::isfinite(fa) && std::isfinite(fb) && std::isfinite(fc);
        if (finite && std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        if ((b - lo) * (b - hi) > 0.0) b = 0.5 * (a + c);
        fb = f(b);
        if (std::isnan(fb)) throw ConvergenceError("find_root: NaN residual inside bracket");
    }
    throw ConvergenceError("find_root: iteration budget exhausted");
}

}  // namespace grnconv::special
