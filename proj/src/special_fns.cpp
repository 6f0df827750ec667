#include "grnconv/special_fns.hpp"

#include <cmath>
#include <numbers>

namespace grnconv::special {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

// Acklam's rational approximation to the normal quantile (relative error
// about 1e-9), refined by Newton steps in phi_inv.
double quantile_seed(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// log(exp(a) - exp(b)) for a >= b.
double log_diff_exp(double a, double b) {
    if (b == -kInf) return a;
    if (b >= a) return -kInf;
    return a + std::log1p(-std::exp(b - a));
}

}  // namespace

NormalParams::NormalParams(double mean, double variance) : mu(mean), v(variance) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw DomainError("NormalParams: variance must be positive and finite");
    if (!std::isfinite(mean)) throw DomainError("NormalParams: mean must be finite");
}

double phi(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double pdf(double x) {
    return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double log_pdf(double x) {
    return -0.5 * x * x - kLogSqrt2Pi;
}

double mills_ratio(double t) {
    if (t < 5.0) return phi(-t) / pdf(t);
    // Continued fraction 1/(t+ 1/(t+ 2/(t+ 3/(t+ ...)))) by modified Lentz.
    constexpr double tiny = 1e-300;
    double f = t, c = t, d = 0.0;
    for (int k = 1; k < 500; ++k) {
        d = t + k * d;
        if (d == 0.0) d = tiny;
        c = t + k / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / f;
}

double log_phi(double x) {
    if (x > -20.0) return std::log(phi(x));
    if (x == -kInf) return -kInf;
    return log_pdf(x) + std::log(mills_ratio(-x));
}

double phi_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("phi_inv: argument must lie in (0,1)");
    double x = quantile_seed(p);
    for (int i = 0; i < 2; ++i) {
        // Residual taken on the side of the smaller tail so it keeps relative accuracy.
        const double r = (p < 0.5) ? phi(x) - p : (1.0 - p) - phi(-x);
        x -= r / pdf(x);
    }
    return x;
}

double phi_inv_log(double log_p) {
    if (!(log_p < 0.0)) throw DomainError("phi_inv_log: argument must be negative");
    if (log_p > -700.0) {
        const double p = std::exp(log_p);
        if (p < 1.0) return phi_inv(p);
    }
    if (log_p > std::log(0.5)) return phi_inv(-std::expm1(log_p));
    const double lo = -std::sqrt(-2.0 * log_p) - 1.0;
    return find_root([log_p](double x) { return log_phi(x) - log_p; }, lo, 0.0, 1e-14);
}

double normal_cdf(const NormalParams& p, double x) {
    if (x == kInf) return 1.0;
    if (x == -kInf) return 0.0;
    return phi(p.standardize(x));
}

double normal_sf(const NormalParams& p, double x) {
    if (x == kInf) return 0.0;
    if (x == -kInf) return 1.0;
    return phi(-p.standardize(x));
}

double normal_pdf(const NormalParams& p, double x) {
    if (!std::isfinite(x)) return 0.0;
    return pdf(p.standardize(x)) / p.sd();
}

double log_normal_pdf(const NormalParams& p, double x) {
    if (!std::isfinite(x)) return -kInf;
    return log_pdf(p.standardize(x)) - 0.5 * std::log(p.v);
}

double log_normal_cdf(const NormalParams& p, double x) {
    if (x == kInf) return 0.0;
    if (x == -kInf) return -kInf;
    return log_phi(p.standardize(x));
}

double log_normal_sf(const NormalParams& p, double x) {
    if (x == kInf) return -kInf;
    if (x == -kInf) return 0.0;
    return log_phi(-p.standardize(x));
}

double normal_cdf_diff(const NormalParams& p, double a, double b) {
    if (!(a < b)) return 0.0;
    if (a >= p.mu) return normal_sf(p, a) - normal_sf(p, b);
    return normal_cdf(p, b) - normal_cdf(p, a);
}

double log_normal_cdf_diff(const NormalParams& p, double a, double b) {
    if (!(a < b)) return -kInf;
    if (a >= p.mu) return log_diff_exp(log_normal_sf(p, a), log_normal_sf(p, b));
    return log_diff_exp(log_normal_cdf(p, b), log_normal_cdf(p, a));
}

}  // namespace grnconv::special
