#include "grnconv/grn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace grnconv::grn {

using special::kInf;
using special::NormalParams;

namespace {

constexpr int kMaxBracketSteps = 80;

bool near_unit(double v) { return std::abs(v - 1.0) < kUnitVarianceBand; }

// log(N_{mu,v}(x) / N(x)) without forming the two large exponents separately.
double log_density_ratio(const NormalParams& target, double x) {
    const double v = target.v, mu = target.mu;
    return (x * x * (v - 1.0) + 2.0 * x * mu - mu * mu) / (2.0 * v) - 0.5 * std::log(v);
}

// Same sign as beta_residual, but formed as a difference of logs so it stays
// finite where both terms underflow.
double beta_sign_function(const NormalParams& target, double s, double x) {
    const double log_gap = special::log_normal_cdf_diff(target, x, s);
    const double log_tail = special::log_phi(-x) + log_density_ratio(target, x);
    return log_gap - log_tail;
}

// log(Phi(z) / N(z)), through the Mills ratio in the lower tail.
double log_cdf_over_pdf(double z) {
    if (z < 0.0) return std::log(special::mills_ratio(-z));
    return special::log_phi(z) - special::log_pdf(z);
}

// Same sign as alpha_residual: log(Phi/N) - log(Phi_{mu,v}/N_{mu,v}).
double alpha_sign_function(const NormalParams& target, double x) {
    return log_cdf_over_pdf(x) - log_cdf_over_pdf(target.standardize(x)) - 0.5 * std::log(target.v);
}

// Walks left from `hi` with doubling steps until g turns positive.
template <typename G>
double expand_left_until_positive(G&& g, double hi) {
    double step = 1.0;
    for (int i = 0; i < kMaxBracketSteps; ++i, step *= 2.0) {
        const double lo = hi - step;
        if (g(lo) > 0.0) return lo;
    }
    throw ConvergenceError("grn: could not bracket root on the left");
}

}  // namespace

std::string_view to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::VLt1: return "V_LT_1";
        case CaseTag::VEq1MuLe0: return "V_EQ_1_MU_LE_0";
        case CaseTag::VEq1MuGt0: return "V_EQ_1_MU_GT_0";
        case CaseTag::VGt1SmallS: return "V_GT_1_SMALL_S";
        case CaseTag::VGt1LargeS: return "V_GT_1_LARGE_S";
    }
    return "?";
}

GrnParams::GrnParams(double variance_ratio, double truncation) : v(variance_ratio), s(truncation) {
    if (std::isnan(v) || v < 0.0) throw DomainError("GrnParams: v must be >= 0");
    if (v == kInf) throw DomainError("GrnParams: v = +inf is only available as a scaled limit");
    if (std::isnan(s)) throw DomainError("GrnParams: s must not be NaN");
}

double beta_residual(double mu, double v, double s, double x) {
    const NormalParams target(mu, v);
    const double gap = special::normal_cdf_diff(target, x, s) * (x < s ? 1.0 : -1.0);
    return gap - special::phi(-x) * std::exp(log_density_ratio(target, x));
}

double alpha_residual(double mu, double v, double x) {
    const NormalParams target(mu, v);
    return special::phi(x) * special::normal_pdf(target, x) -
           special::normal_cdf(target, x) * special::pdf(x);
}

double solve_alpha(double mu, double v) {
    if (!(v > 1.0)) throw CaseError("solve_alpha: requires v > 1");
    const NormalParams target(mu, v);
    auto g = [&](double x) { return alpha_sign_function(target, x); };

    // g < 0 left of alpha, g > 0 right of it.
    double anchor = mu;
    double lo = anchor, hi = anchor;
    if (g(anchor) > 0.0) {
        double step = 1.0;
        for (int i = 0;; ++i, step *= 2.0) {
            if (i == kMaxBracketSteps) throw ConvergenceError("solve_alpha: no left bracket");
            lo = anchor - step;
            if (g(lo) < 0.0) break;
        }
    } else {
        double step = 1.0;
        for (int i = 0;; ++i, step *= 2.0) {
            if (i == kMaxBracketSteps) throw ConvergenceError("solve_alpha: no right bracket");
            hi = anchor + step;
            if (g(hi) > 0.0) break;
        }
    }
    return special::find_root(g, lo, hi);
}

double small_s_threshold(double mu, double v) {
    const NormalParams target(mu, v);
    const double alpha = solve_alpha(mu, v);
    const double log_ratio = special::log_normal_cdf(target, alpha) - special::log_phi(alpha);
    // The ratio Phi_{mu,v}(alpha) / Phi(alpha) rounds to 1 when alpha sits in
    // the upper tail, so take its complement from the survival functions there.
    double log_complement;
    if (alpha >= 0.0) {
        const double log_sf_target = special::log_normal_sf(target, alpha);
        const double log_sf = special::log_phi(-alpha);
        if (log_sf_target <= log_sf) return kInf;
        log_complement = log_sf_target + std::log1p(-std::exp(log_sf - log_sf_target)) -
                         special::log_phi(alpha);
    } else {
        if (!(log_ratio < 0.0)) return kInf;
        log_complement = std::log(-std::expm1(log_ratio));
    }
    if (log_complement < std::log(0.5))
        return mu - target.sd() * special::phi_inv_log(log_complement);
    return mu + target.sd() * special::phi_inv_log(log_ratio);
}

double solve_beta(double mu, double v, double s) {
    if (!(v > 0.0) || !std::isfinite(v)) throw CaseError("solve_beta: requires 0 < v < inf");
    if (near_unit(v)) v = 1.0;
    if (s == -kInf) throw CaseError("solve_beta: no root for s = -inf");

    const NormalParams target(mu, v);
    auto g = [&](double x) { return beta_sign_function(target, s, x); };

    if (v < 1.0) {
        const double hi = std::min(s, mu / (1.0 - v));
        const double lo = expand_left_until_positive(g, hi);
        return special::find_root(g, lo, hi);
    }
    if (v == 1.0) {
        if (!(mu > 0.0)) throw CaseError("solve_beta: v = 1 requires mu > 0");
        if (s == kInf) return kInf;
        const double lo = expand_left_until_positive(g, s);
        return special::find_root(g, lo, s);
    }
    const double alpha = solve_alpha(mu, v);
    if (s == kInf) return kInf;
    if (s <= small_s_threshold(mu, v) + 1e-12)
        throw CaseError("solve_beta: v > 1 requires s above the small-s threshold");
    if (!(g(alpha) > 0.0)) throw CaseError("solve_beta: residual not positive at alpha");
    return special::find_root(g, alpha, s);
}

GrnRoots solve_roots(const GrnParams& params, double mu) {
    const double v = near_unit(params.v) ? 1.0 : params.v;
    if (!(v > 0.0)) throw CaseError("solve_roots: v = 0 has no roots");
    GrnRoots roots;
    if (v < 1.0) {
        roots.case_tag = CaseTag::VLt1;
        roots.beta = solve_beta(mu, v, params.s);
    } else if (v == 1.0) {
        if (mu <= 0.0) {
            roots.case_tag = CaseTag::VEq1MuLe0;
        } else {
            roots.case_tag = CaseTag::VEq1MuGt0;
            roots.beta = solve_beta(mu, v, params.s);
        }
    } else if (params.s != kInf && params.s <= small_s_threshold(mu, v) + 1e-12) {
        roots.case_tag = CaseTag::VGt1SmallS;
    } else {
        roots.case_tag = CaseTag::VGt1LargeS;
        roots.alpha = solve_alpha(mu, v);
        roots.beta = solve_beta(mu, v, params.s);
    }
    return roots;
}

double i_term(double mu, double v, double x) {
    if (!(v > 0.0)) throw DomainError("i_term: requires v > 0");
    const double scale = std::sqrt(2.0 * std::sqrt(v) / (1.0 + v)) *
                         std::exp(-mu * mu / (4.0 * (1.0 + v)));
    return scale * special::normal_cdf(NormalParams(mu / (1.0 + v), 2.0 * v / (1.0 + v)), x);
}

namespace {

double i_term_diff(double mu, double v, double a, double b) {
    const double scale = std::sqrt(2.0 * std::sqrt(v) / (1.0 + v)) *
                         std::exp(-mu * mu / (4.0 * (1.0 + v)));
    return scale * special::normal_cdf_diff(NormalParams(mu / (1.0 + v), 2.0 * v / (1.0 + v)), a, b);
}

// sqrt(1 - Phi(beta)) sqrt(Phi_{mu,v}(s) - Phi_{mu,v}(beta)), zero when beta = +inf.
double upper_piece(const NormalParams& target, double beta, double s) {
    if (beta == kInf) return 0.0;
    return std::sqrt(special::phi(-beta)) * std::sqrt(special::normal_cdf_diff(target, beta, s));
}

}  // namespace

double z_eval(const GrnParams& params, double mu) {
    const double s = params.s;
    if (params.v == 0.0) return mu <= s ? special::phi(mu) : 1.0;
    if (s == -kInf) return 1.0;

    const GrnRoots roots = solve_roots(params, mu);
    const double v = near_unit(params.v) ? 1.0 : params.v;
    const NormalParams target(mu, v);

    double fid = 0.0;
    switch (roots.case_tag) {
        case CaseTag::VEq1MuLe0:
            return special::phi(mu - s);
        case CaseTag::VGt1SmallS:
            return special::normal_sf(target, s);
        case CaseTag::VLt1:
        case CaseTag::VEq1MuGt0: {
            const double beta = *roots.beta;
            fid = upper_piece(target, beta, s) + i_term(mu, v, beta);
            break;
        }
        case CaseTag::VGt1LargeS: {
            const double alpha = *roots.alpha, beta = *roots.beta;
            fid = std::sqrt(special::phi(alpha) * special::normal_cdf(target, alpha)) +
                  i_term_diff(mu, v, alpha, beta) + upper_piece(target, beta, s);
            break;
        }
    }
    return std::clamp(1.0 - fid * fid, 0.0, 1.0);
}

double z_limit_v_to_infinity(double s, double mu) {
    return special::phi(mu - std::min(s, 0.0));
}

double z_oracle(const GrnParams& params, double mu, int grid) {
    const double v = params.v, s = params.s;
    if (!(v > 0.0)) throw DomainError("z_oracle: requires v > 0");
    if (!std::isfinite(s)) throw DomainError("z_oracle: requires finite s");
    if (grid < 2) throw DomainError("z_oracle: grid must be >= 2");

    const NormalParams target(mu, v);
    const double wide = std::max(1.0, std::sqrt(v));
    constexpr double slack = 1e-12;

    // Breakpoint grid for b <= b'.
    const double hi = std::min(s, 8.0);
    const double lo = std::min(-8.0, hi - 16.0);
    std::vector<double> xs(grid);
    for (int i = 0; i < grid; ++i) xs[i] = lo + (hi - lo) * i / (grid - 1);

    // Cumulative integral of sqrt(N N_{mu,v}) along the grid by quadrature.
    auto overlap = [&](double t) {
        return std::exp(0.5 * (special::log_pdf(t) + special::log_normal_pdf(target, t)));
    };
    const double peak = mu / (1.0 + v);
    const double overlap_sd = std::sqrt(2.0 * v / (1.0 + v));
    const double far_left = std::min(lo, peak) - 40.0 * std::max(1.0, overlap_sd);
    std::vector<double> cum(grid);
    {
        const double bp[] = {peak};
        cum[0] = special::integrate(overlap, far_left, xs[0], 1e-13, bp);
        for (int i = 1; i < grid; ++i)
            cum[i] = cum[i - 1] + special::integrate(overlap, xs[i - 1], xs[i], 1e-14, bp);
    }

    // Left pieces A = c Phi_{mu,v} on (-inf, b] need Phi_{mu,v}/Phi non-increasing there.
    std::vector<double> probe;
    for (int k = 60; k >= 1; --k) probe.push_back(lo - 40.0 * wide * k / 60.0);
    const std::size_t probe_head = probe.size();
    probe.insert(probe.end(), xs.begin(), xs.end());
    std::vector<bool> left_ok(grid);
    {
        double running_min = kInf;
        for (std::size_t k = 0; k < probe.size(); ++k) {
            const double r =
                special::log_normal_cdf(target, probe[k]) - special::log_phi(probe[k]);
            running_min = std::min(running_min, r);
            if (k >= probe_head) left_ok[k - probe_head] = running_min >= r - slack * (1.0 + std::abs(r));
        }
    }

    // Right pieces A = Phi(b') + k (Phi_{mu,v} - Phi_{mu,v}(b')) on [b', s] need A >= Phi,
    // i.e. log(1 - Phi(x)) >= log k + log(Phi_{mu,v}(s) - Phi_{mu,v}(x)).
    std::vector<double> right_probe(xs.begin(), xs.end());
    for (int k = 1; k <= 60 && hi < s; ++k) right_probe.push_back(hi + (std::min(s, 60.0) - hi) * k / 60.0);
    std::vector<bool> right_ok(grid);
    std::vector<double> right_value(grid);
    for (int j = 0; j < grid; ++j) {
        const double bj = xs[j];
        const double log_gap = special::log_normal_cdf_diff(target, bj, s);
        right_value[j] = std::sqrt(special::phi(-bj)) * std::exp(0.5 * log_gap);
        if (log_gap == -kInf) {
            right_ok[j] = bj >= s;
            continue;
        }
        const double log_k = special::log_phi(-bj) - log_gap;
        bool ok = true;
        for (double x : right_probe) {
            if (x <= bj || x >= s) continue;
            const double lhs = special::log_phi(-x);
            const double rhs = log_k + special::log_normal_cdf_diff(target, x, s);
            if (lhs < rhs - slack * (1.0 + std::abs(rhs))) {
                ok = false;
                break;
            }
        }
        right_ok[j] = ok;
    }

    double best = 0.0;

    // Pure truncation envelope A = Phi_{mu,v} / Phi_{mu,v}(s) below s.
    {
        const double log_top = special::log_normal_cdf(target, s);
        bool ok = true;
        for (double x : probe) {
            if (x >= s) break;
            if (special::log_normal_cdf(target, x) - log_top < special::log_phi(x) - slack) {
                ok = false;
                break;
            }
        }
        if (ok) best = std::max(best, std::exp(0.5 * log_top));
    }

    for (int j = 0; j < grid; ++j) {
        if (!right_ok[j]) continue;
        // b = -inf: A = Phi up to b'.
        best = std::max(best, cum[j] + right_value[j]);
        for (int i = 0; i <= j; ++i) {
            if (!left_ok[i]) continue;
            const double left = std::sqrt(special::phi(xs[i]) * special::normal_cdf(target, xs[i]));
            best = std::max(best, left + (cum[j] - cum[i]) + right_value[j]);
        }
    }
    return std::clamp(1.0 - best * best, 0.0, 1.0);
}

}  // namespace grnconv::grn
