#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "grnconv/distribution.hpp"

// First- and second-order rate regions of conversion through a storage of
// H(P) n + s2 sqrt(n) bits into T_n = (s1 / H(Q)) n + t2 sqrt(n) target copies.
// All logarithms are base 2.
namespace grnconv::asymptotics {

struct SourceTargetProfile {
    double H_p = 0, H_q = 0;
    double V_p = 0, V_q = 0;
    /// (H_p / V_p) / (H_q / V_q); +inf when P is uniform, 0 when only Q is.
    double C_pq = 0;
    /// H_q / sqrt(V_p); +inf when P is uniform.
    double D_pq = 0;
    bool p_uniform = false, q_uniform = false;

    /// Profile from entropies and varentropies; V = 0 marks a uniform side.
    static SourceTargetProfile from_moments(double H_p, double V_p, double H_q, double V_q);
};

SourceTargetProfile profile(const Distribution& p, const Distribution& q);

struct RatePair1 {
    double s1 = 0, t1 = 0;
};

struct RatePair2 {
    double s2 = 0, t2 = 0;
};

enum class RateClass { Interior, SemiAdmissible, Admissible, Outside, Unresolved };
enum class Relation { Better, Simulates, Neither };

const char* to_string(RateClass c);
const char* to_string(Relation r);

/// |s1 - H_p| within this fraction of H_p selects the admissible formulas.
inline constexpr double kAdmissibleBand = 1e-9;

/// Bounds on the divided second difference of the boundary t2(s2) over s2 +- step.
struct Rate2Thresholds {
    double step = 1e-3;
    double line = 1e-6;
    double curve = 1e-4;
};

bool region1_contains(const SourceTargetProfile& prof, const RatePair1& r);
RateClass classify_rate1(const SourceTargetProfile& prof, const RatePair1& r);

/// True when s1 sits on H_p and the admissible-corner formulas apply.
bool is_admissible_storage_rate(const SourceTargetProfile& prof, double s1);

/// Optimal asymptotic fidelity at storage rates (s1, s2) and target
/// second-order rate t2, with t1 = s1 / H_q. RateError unless 0 < s1 <= H_p.
double second_order_fidelity(const SourceTargetProfile& prof, double s1, double s2, double t2);

/// sup{t2 : fidelity(t2) >= nu}. RangeError unless 0 < nu < 1.
double second_order_fidelity_inverse(const SourceTargetProfile& prof, double s1, double s2, double nu);

bool region2_contains(const SourceTargetProfile& prof, double s1, double nu, const RatePair2& r);

/// (min{H_p, s1} / H_q) n + inverse * sqrt(n).
double expansion_L(const SourceTargetProfile& prof, double s1, double s2, double nu, std::int64_t n);

/// Whether `a` is better than, or simulates, `b` along slope t1/s1.
Relation simulate_or_better_2nd(double t1_over_s1, const RatePair2& a, const RatePair2& b);

RateClass classify_rate2(const SourceTargetProfile& prof, double s1, double nu, const RatePair2& r,
                         const Rate2Thresholds& thresholds = {});

/// Storage bits to regenerate P^n with fidelity nu: H n + sqrt(V) Phi^{-1}(nu^2) sqrt(n).
double compression_min_storage(const Distribution& p, double nu, std::int64_t n);

/// F_{P,Q,s2}(t2) / F_{P,Q}(t2) pointwise; nullopt where the denominator vanishes.
std::vector<std::optional<double>> ratio_curve(const SourceTargetProfile& prof, double s2,
                                               std::span<const double> t2_grid);

}  // namespace grnconv::asymptotics
