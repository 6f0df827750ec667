#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grnconv/distribution.hpp"

// Finite-size conversion: fidelity, majorization order, storage conditioning,
// maximal fidelities F^M and F^D and maximal convertible numbers.
namespace grnconv {

template <typename Scalar>
struct ConversionResult {
    Scalar fidelity = 0;
    BasicDistribution<Scalar> witness;
    /// Cut positions (atom counts) where the prefix constraint is active.
    std::vector<Scalar> tight_prefixes;
};

enum class MajorizationSolver {
    PoolAdjacent,
    /// Every subset of tight prefixes; dense, support <= 12. Test oracle.
    ActiveSetEnumeration,
};

enum class ConversionMode { Deterministic, Majorization };

inline constexpr double kMajorizationSlack = 1e-12;

/// sum_i sqrt(p_i q_i) over decreasingly aligned atoms.
template <typename Scalar>
Scalar fidelity(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q);

/// p is majorized by q: every prefix sum of p is at most that of q.
template <typename Scalar>
bool is_majorized(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q,
                  double slack = kMajorizationSlack);

/// C_N(p): the top levels kept, the remaining mass spread evenly up to N atoms.
template <typename Scalar>
BasicDistribution<Scalar> condition_to_storage(const BasicDistribution<Scalar>& p, Scalar capacity);

/// floor(2^n_bits), snapped to the nearest integer within relative 1e-9 so
/// that m log2 N bits give exactly N^m slots. +inf when out of range.
template <typename Scalar>
Scalar storage_capacity(double n_bits);

/// sup F(p', q) over p' majorizing p, with the optimizing p'.
template <typename Scalar>
ConversionResult<Scalar> max_fidelity_majorization(
    const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q,
    MajorizationSolver solver = MajorizationSolver::PoolAdjacent);

/// F^M through a storage of n_bits bits: F^M(C_{2^n_bits}(p) -> q).
template <typename Scalar>
ConversionResult<Scalar> max_fidelity_majorization_with_storage(const BasicDistribution<Scalar>& p,
                                                                const BasicDistribution<Scalar>& q,
                                                                double n_bits);

/// Largest violation of the optimality conditions of `result` as a
/// solution of the F^M problem (primal feasibility, dual signs,
/// complementary slackness).
template <typename Scalar>
Scalar kkt_residual(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q,
                    const ConversionResult<Scalar>& result);

/// Max over maps W of F(W(p), q) with at most `capacity` distinct images.
/// Exhaustive over set partitions of the source atoms (support <= 9).
double max_fidelity_deterministic(const Distribution& p, const Distribution& q,
                                  std::optional<double> n_bits = std::nullopt);

/// Literal enumeration of all |Y|^|X| maps; small instances only. Test oracle.
double max_fidelity_deterministic_by_maps(const Distribution& p, const Distribution& q);

/// base^n by type classes; SizeError past 10^6 compositions or the exponent
/// range of Scalar.
template <typename Scalar>
BasicDistribution<Scalar> iid_power(const BasicDistribution<Scalar>& base, std::int64_t n);

inline constexpr std::int64_t kMaxCompositions = 1'000'000;

/// Largest L with max fidelity (p -> q_base^L, optional storage) >= nu; 0 if none.
template <typename Scalar>
std::int64_t max_convertible_number(const BasicDistribution<Scalar>& p,
                                    const BasicDistribution<Scalar>& q_base, double nu,
                                    std::optional<double> n_bits, ConversionMode mode);

}  // namespace grnconv
