#pragma once

#include <optional>
#include <string_view>

#include "grnconv/special_fns.hpp"

// Generalized Rayleigh-normal distribution functions Z_{v,s}(mu):
// one minus the squared maximal continuous fidelity between N_{mu,v} and the
// derivative of an envelope A with Phi <= A <= 1 and A(s) = 1.
namespace grnconv::grn {

enum class CaseTag { VLt1, VEq1MuLe0, VEq1MuGt0, VGt1SmallS, VGt1LargeS };

std::string_view to_string(CaseTag tag);

/// Variance ratio v >= 0 and truncation point s (s = +inf gives the plain
/// Rayleigh-normal family).
struct GrnParams {
    double v = 1.0;
    double s = special::kInf;

    GrnParams() = default;
    GrnParams(double variance_ratio, double truncation);

    [[nodiscard]] bool truncated() const { return s != special::kInf; }
};

struct GrnRoots {
    CaseTag case_tag = CaseTag::VLt1;
    std::optional<double> alpha;
    std::optional<double> beta;
};

/// |v - 1| below this dispatches to the v = 1 formulas.
inline constexpr double kUnitVarianceBand = 1e-8;

/// Cleared-denominator residual
/// (Phi_{mu,v}(s) - Phi_{mu,v}(x)) - (1 - Phi(x)) N_{mu,v}(x) / N(x).
double beta_residual(double mu, double v, double s, double x);

/// Cleared-denominator residual Phi(x) N_{mu,v}(x) - Phi_{mu,v}(x) N(x).
double alpha_residual(double mu, double v, double x);

/// Unique root of the alpha equation; requires v > 1.
double solve_alpha(double mu, double v);

/// Truncation level separating the two v > 1 branches:
/// Phi_{mu,v}^{-1}(Phi_{mu,v}(alpha) / Phi(alpha)).
double small_s_threshold(double mu, double v);

/// Root of the beta equation (the larger one when v > 1). With s = +inf the
/// root escapes to +inf for v >= 1, which is returned as such. Throws
/// CaseError outside the regime where the root exists.
double solve_beta(double mu, double v, double s);

/// Case tag plus whichever roots the closed form needs.
GrnRoots solve_roots(const GrnParams& params, double mu);

/// I_{mu,v}(x) = int_{-inf}^x sqrt(N(t) N_{mu,v}(t)) dt in closed form.
double i_term(double mu, double v, double x);

double z_eval(const GrnParams& params, double mu);

/// Variational estimate of Z from the two-parameter envelope family
/// (plus the pure truncation envelope), maximized over a grid of
/// breakpoints. Only feasible envelopes are scored, so the result never
/// falls below the true value beyond quadrature error. Test oracle.
double z_oracle(const GrnParams& params, double mu, int grid = 400);

/// lim_{v->inf} Z_{v, sqrt(v) s}(sqrt(v) mu) = Phi(mu - min{s, 0}).
double z_limit_v_to_infinity(double s, double mu);

}  // namespace grnconv::grn
