#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "grnconv/distribution.hpp"

// Bipartite pure states reduced to their squared Schmidt coefficients, and
// LOCC conversion through an entanglement storage of N qubit pairs.
namespace grnconv::quantum {

inline constexpr double kNormTolerance = 1e-8;

/// Decreasing eigenvalues of A A^dagger by cyclic complex Jacobi, zeros dropped.
/// NormError if the Frobenius norm of A differs from 1 by more than 1e-8.
Distribution schmidt_squared(const Eigen::MatrixXcd& amplitudes);

class PureState {
public:
    static PureState from_amplitudes(Eigen::MatrixXcd amplitudes);
    static PureState from_schmidt(Distribution schmidt_sq);
    /// Both forms given: they must agree within 1e-8 (DistributionError otherwise).
    static PureState from_both(Eigen::MatrixXcd amplitudes, const Distribution& schmidt_sq);

    [[nodiscard]] const Distribution& schmidt_sq() const { return schmidt_; }
    [[nodiscard]] const std::optional<Eigen::MatrixXcd>& amplitudes() const { return amplitudes_; }

private:
    PureState(std::optional<Eigen::MatrixXcd> a, Distribution p)
        : amplitudes_(std::move(a)), schmidt_(std::move(p)) {}

    std::optional<Eigen::MatrixXcd> amplitudes_;
    Distribution schmidt_;
};

/// Optimal LOCC fidelity psi -> phi through (C^2 (x) C^2)^{(x) N}: F^M with capacity 2^N.
double locc_fidelity_via_storage(const PureState& psi, const PureState& phi, double n_qubit_pairs);

/// Largest L with psi^{(x) n} -> phi^{(x) L} at fidelity >= nu through N qubit
/// pairs (unbounded when nullopt).
std::int64_t locc_max_recovery(const PureState& psi, const PureState& phi, double nu, std::int64_t n,
                               std::optional<double> n_qubit_pairs);

/// Predicted n - L_n(psi, psi | nu, s2) = -F^{-1}_{P,P,s2}(nu) sqrt(n). Negative means a gain.
double compression_loss(const PureState& psi, double nu, double s2, std::int64_t n);

}  // namespace grnconv::quantum
