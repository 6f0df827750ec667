#include "grnconv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grnconv/grn.hpp"
#include "grnconv/special_fns.hpp"

namespace grnconv::asymptotics {

using special::kInf;

namespace {

void require_nu(double nu) {
    if (!(nu > 0 && nu < 1)) throw RangeError("fidelity level must lie in (0,1)");
}

void require_storage_rate(const SourceTargetProfile& prof, double s1) {
    if (!(prof.H_p > 0) || !(prof.H_q > 0)) throw RateError("source and target need positive entropy");
    if (!(s1 > 0) || s1 > prof.H_p * (1 + kAdmissibleBand))
        throw RateError("storage rate must lie in (0, H(P)]");
}

double sqrt_phi(double x) { return std::sqrt(special::phi(x)); }

}  // namespace

const char* to_string(RateClass c) {
    switch (c) {
        case RateClass::Interior: return "INTERIOR";
        case RateClass::SemiAdmissible: return "SEMI_ADMISSIBLE";
        case RateClass::Admissible: return "ADMISSIBLE";
        case RateClass::Outside: return "OUTSIDE";
        case RateClass::Unresolved: return "UNRESOLVED";
    }
    return "?";
}

const char* to_string(Relation r) {
    switch (r) {
        case Relation::Better: return "BETTER";
        case Relation::Simulates: return "SIMULATES";
        case Relation::Neither: return "NEITHER";
    }
    return "?";
}

SourceTargetProfile SourceTargetProfile::from_moments(double H_p, double V_p, double H_q, double V_q) {
    if (!(H_p >= 0) || !(H_q >= 0) || !(V_p >= 0) || !(V_q >= 0))
        throw DomainError("profile: entropies and varentropies must be non-negative");
    SourceTargetProfile prof;
    prof.H_p = H_p;
    prof.H_q = H_q;
    prof.V_p = V_p;
    prof.V_q = V_q;
    prof.p_uniform = V_p == 0;
    prof.q_uniform = V_q == 0;
    if (prof.p_uniform)
        prof.C_pq = kInf;
    else if (prof.q_uniform)
        prof.C_pq = 0;
    else
        prof.C_pq = (H_p / V_p) / (H_q / V_q);
    prof.D_pq = prof.p_uniform ? kInf : H_q / std::sqrt(V_p);
    return prof;
}

SourceTargetProfile profile(const Distribution& p, const Distribution& q) {
    return SourceTargetProfile::from_moments(entropy_bits(p), varentropy_bits(p), entropy_bits(q),
                                             varentropy_bits(q));
}

bool region1_contains(const SourceTargetProfile& prof, const RatePair1& r) {
    if (!(prof.H_q > 0)) throw RateError("target needs positive entropy");
    return r.s1 > 0 && r.t1 > 0 && r.t1 <= std::min(prof.H_p, r.s1) / prof.H_q;
}

RateClass classify_rate1(const SourceTargetProfile& prof, const RatePair1& r) {
    if (!region1_contains(prof, r)) {
        // Tolerate rounding on the boundary line itself.
        if (!(r.s1 > 0 && r.t1 > 0) ||
            r.t1 > std::min(prof.H_p, r.s1) / prof.H_q + 1e-12)
            return RateClass::Outside;
    }
    const bool on_slope = std::abs(r.t1 - r.s1 / prof.H_q) <= 1e-12 * std::max(1.0, r.t1);
    if (on_slope && r.s1 <= prof.H_p * (1 + 1e-12)) {
        return std::abs(r.s1 - prof.H_p) <= 1e-12 * std::max(1.0, prof.H_p) ? RateClass::Admissible
                                                                            : RateClass::SemiAdmissible;
    }
    return RateClass::Interior;
}

bool is_admissible_storage_rate(const SourceTargetProfile& prof, double s1) {
    return std::abs(s1 - prof.H_p) <= kAdmissibleBand * prof.H_p;
}

double second_order_fidelity(const SourceTargetProfile& prof, double s1, double s2, double t2) {
    require_storage_rate(prof, s1);
    if (!is_admissible_storage_rate(prof, s1)) {
        if (prof.q_uniform) return prof.H_q * t2 <= s2 ? 1.0 : 0.0;
        return sqrt_phi(std::sqrt(prof.H_q / (prof.V_q * s1)) * (s2 - prof.H_q * t2));
    }
    if (prof.p_uniform && prof.q_uniform) return prof.H_q * t2 <= std::min(s2, 0.0) ? 1.0 : 0.0;
    if (prof.p_uniform) {
        const double log_l = prof.H_p;
        return sqrt_phi(std::sqrt(prof.H_q / (prof.V_q * log_l)) * (std::min(s2, 0.0) - prof.H_q * t2));
    }
    if (prof.q_uniform) {
        const double log_l = prof.H_q;
        return log_l * t2 <= s2 ? sqrt_phi(-log_l * t2 / std::sqrt(prof.V_p)) : 0.0;
    }
    const double z = grn::z_eval({prof.C_pq, s2 / std::sqrt(prof.V_p)}, t2 * prof.D_pq);
    return std::sqrt(1.0 - z);
}

double second_order_fidelity_inverse(const SourceTargetProfile& prof, double s1, double s2, double nu) {
    require_nu(nu);
    require_storage_rate(prof, s1);
    auto reaches = [&](double t) { return second_order_fidelity(prof, s1, s2, t) >= nu; };

    double bound = 10.0 * std::max(1.0, prof.p_uniform ? 1.0 : std::sqrt(prof.V_p) / prof.H_q);
    bound = std::max(bound, 2.0 * std::abs(s2) / prof.H_q);
    double lo = -bound, hi = bound;
    for (int i = 0; !reaches(lo) || reaches(hi); ++i) {
        if (i == 60) throw ConvergenceError("fidelity inverse: could not bracket");
        lo *= 2;
        hi *= 2;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (reaches(mid) ? lo : hi) = mid;
    }
    return lo;
}

bool region2_contains(const SourceTargetProfile& prof, double s1, double nu, const RatePair2& r) {
    return r.t2 <= second_order_fidelity_inverse(prof, s1, r.s2, nu) + 1e-10;
}

double expansion_L(const SourceTargetProfile& prof, double s1, double s2, double nu, std::int64_t n) {
    if (n < 1) throw DomainError("expansion_L: n must be positive");
    const double rn = static_cast<double>(n);
    return std::min(prof.H_p, s1) / prof.H_q * rn +
           second_order_fidelity_inverse(prof, s1, s2, nu) * std::sqrt(rn);
}

Relation simulate_or_better_2nd(double t1_over_s1, const RatePair2& a, const RatePair2& b) {
    if (!(t1_over_s1 > 0)) throw DomainError("simulate_or_better_2nd: slope must be positive");
    if (a.s2 <= b.s2 && a.t2 >= b.t2) return Relation::Better;
    if (a.s2 >= b.s2 && std::abs(b.t2 - (a.t2 + t1_over_s1 * (b.s2 - a.s2))) <= 1e-12)
        return Relation::Simulates;
    return Relation::Neither;
}

RateClass classify_rate2(const SourceTargetProfile& prof, double s1, double nu, const RatePair2& r,
                         const Rate2Thresholds& th) {
    auto boundary = [&](double s2) { return second_order_fidelity_inverse(prof, s1, s2, nu); };
    const double b0 = boundary(r.s2);
    const double slack = 1e-10 * std::max(1.0, std::abs(b0));
    if (r.t2 > b0 + slack) return RateClass::Outside;
    if (r.t2 < b0 - slack) return RateClass::Interior;
    if (!is_admissible_storage_rate(prof, s1)) return RateClass::SemiAdmissible;

    const double h = th.step;
    const double left = boundary(r.s2 - h), right = boundary(r.s2 + h);
    // A flat stretch to the left means a smaller storage reaches the same t2.
    if (b0 - left < 1e-9) return RateClass::Interior;
    const double second = std::abs(right - 2 * b0 + left) / (h * h);
    const double slope = (b0 - left) / h;
    if (second < th.line && std::abs(slope - 1.0 / prof.H_q) < 1e-6) return RateClass::SemiAdmissible;
    if (second > th.curve) return RateClass::Admissible;
    return RateClass::Unresolved;
}

double compression_min_storage(const Distribution& p, double nu, std::int64_t n) {
    require_nu(nu);
    if (p.is_uniform()) throw UniformError("compression_min_storage: source is uniform");
    const double rn = static_cast<double>(n);
    return entropy_bits(p) * rn + std::sqrt(varentropy_bits(p)) * special::phi_inv(nu * nu) * std::sqrt(rn);
}

std::vector<std::optional<double>> ratio_curve(const SourceTargetProfile& prof, double s2,
                                               std::span<const double> t2_grid) {
    if (prof.p_uniform || prof.q_uniform) throw UniformError("ratio_curve: needs non-uniform P and Q");
    std::vector<std::optional<double>> out;
    out.reserve(t2_grid.size());
    for (double t2 : t2_grid) {
        const double num = second_order_fidelity(prof, prof.H_p, s2, t2);
        const double den = std::sqrt(1.0 - grn::z_eval({prof.C_pq, kInf}, t2 * prof.D_pq));
        if (den > 0)
            out.emplace_back(num / den);
        else
            out.emplace_back(std::nullopt);
    }
    return out;
}

}  // namespace grnconv::asymptotics
