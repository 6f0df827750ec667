#include "grnconv/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "grnconv/asymptotics.hpp"
#include "grnconv/majorization.hpp"

namespace grnconv::quantum {

namespace {

using cplx = std::complex<double>;

double off_diagonal_norm(const Eigen::MatrixXcd& h) {
    double sum = 0;
    for (Eigen::Index j = 0; j < h.cols(); ++j)
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            if (i != j) sum += std::norm(h(i, j));
    return std::sqrt(sum);
}

// Hermitian eigenvalues by cyclic Jacobi. Each rotation first strips the
// phase of h(p,q) and then applies the real symmetric rotation.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXcd h) {
    const Eigen::Index d = h.rows();
    for (int sweep = 0; off_diagonal_norm(h) > 1e-12; ++sweep) {
        if (sweep == 100) throw ConvergenceError("schmidt_squared: Jacobi sweeps exhausted");
        for (Eigen::Index p = 0; p < d - 1; ++p)
            for (Eigen::Index q = p + 1; q < d; ++q) {
                const double a = std::abs(h(p, q));
                if (a < 1e-300) continue;
                const cplx phase = h(p, q) / a;
                const double tau = (h(q, q).real() - h(p, p).real()) / (2 * a);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1 / std::sqrt(1 + t * t), s = t * c;
                // J = diag(1, conj(phase)) [[c, s], [-s, c]]
                const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
                for (Eigen::Index i = 0; i < d; ++i) {
                    const cplx hp = h(i, p), hq = h(i, q);
                    h(i, p) = hp * jpp + hq * jqp;
                    h(i, q) = hp * jpq + hq * jqq;
                }
                for (Eigen::Index j = 0; j < d; ++j) {
                    const cplx hp = h(p, j), hq = h(q, j);
                    h(p, j) = std::conj(jpp) * hp + std::conj(jqp) * hq;
                    h(q, j) = std::conj(jpq) * hp + std::conj(jqq) * hq;
                }
                h(p, q) = h(q, p) = 0;
            }
    }
    std::vector<double> eig(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) eig[static_cast<std::size_t>(i)] = h(i, i).real();
    return eig;
}

}  // namespace

Distribution schmidt_squared(const Eigen::MatrixXcd& amplitudes) {
    if (amplitudes.size() == 0) throw NormError("schmidt_squared: empty amplitude matrix");
    const double norm = amplitudes.norm();
    if (!(std::abs(norm - 1) <= kNormTolerance)) throw NormError("schmidt_squared: amplitudes not unit norm");

    const Eigen::MatrixXcd gram = amplitudes * amplitudes.adjoint();
    std::vector<double> eig = jacobi_eigenvalues(gram);
    std::erase_if(eig, [](double x) { return x <= 1e-14; });
    // Renormalize away the tolerated norm defect.
    double total = 0;
    for (double x : eig) total += x;
    for (double& x : eig) x /= total;
    return Distribution::from_probs(eig, 1e-10);
}

PureState PureState::from_amplitudes(Eigen::MatrixXcd amplitudes) {
    Distribution p = schmidt_squared(amplitudes);
    return PureState(std::move(amplitudes), std::move(p));
}

PureState PureState::from_schmidt(Distribution schmidt_sq) { return PureState(std::nullopt, std::move(schmidt_sq)); }

PureState PureState::from_both(Eigen::MatrixXcd amplitudes, const Distribution& schmidt_sq) {
    PureState state = from_amplitudes(std::move(amplitudes));
    const auto a = state.schmidt_.dense();
    const auto b = schmidt_sq.dense();
    const Eigen::Index n = std::max(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = i < a.size() ? a(i) : 0.0, y = i < b.size() ? b(i) : 0.0;
        if (std::abs(x - y) > 1e-8) throw DistributionError("pure state: amplitudes and schmidt_sq disagree");
    }
    return state;
}

double locc_fidelity_via_storage(const PureState& psi, const PureState& phi, double n_qubit_pairs) {
    if (!(n_qubit_pairs >= 0)) throw DomainError("locc_fidelity_via_storage: N must be non-negative");
    return max_fidelity_majorization_with_storage(psi.schmidt_sq(), phi.schmidt_sq(), n_qubit_pairs).fidelity;
}

std::int64_t locc_max_recovery(const PureState& psi, const PureState& phi, double nu, std::int64_t n,
                               std::optional<double> n_qubit_pairs) {
    if (n < 1) throw DomainError("locc_max_recovery: n must be positive");
    const auto source = iid_power(psi.schmidt_sq().cast<long double>(), n);
    return max_convertible_number(source, phi.schmidt_sq().cast<long double>(), nu, n_qubit_pairs,
                                  ConversionMode::Majorization);
}

double compression_loss(const PureState& psi, double nu, double s2, std::int64_t n) {
    if (n < 1) throw DomainError("compression_loss: n must be positive");
    const Distribution& p = psi.schmidt_sq();
    if (p.is_uniform()) throw UniformError("compression_loss: Schmidt coefficients are flat");
    const auto prof = asymptotics::profile(p, p);
    return -asymptotics::second_order_fidelity_inverse(prof, prof.H_p, s2, nu) * std::sqrt(static_cast<double>(n));
}

}  // namespace grnconv::quantum
