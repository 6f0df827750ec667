#include <doctest.h>

#include <cmath>
#include <random>

#include "grnconv/asymptotics.hpp"
#include "grnconv/majorization.hpp"
#include "grnconv/quantum.hpp"
#include "grnconv/special_fns.hpp"
#include "oracles/majorization_oracles.hpp"
#include "oracles/quantum_oracles.hpp"

using namespace grnconv;
using namespace grnconv::quantum;

namespace {

void check_against_oracle(const Eigen::MatrixXcd& a, double tol) {
    const auto p = schmidt_squared(a).dense();
    const auto ref = oracle::singular_values_sq(a);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double got = static_cast<Eigen::Index>(i) < p.size() ? p(static_cast<Eigen::Index>(i)) : 0.0;
        CHECK(std::abs(got - ref[i]) <= tol);
    }
}

}  // namespace

TEST_CASE("schmidt_squared examples") {
    Eigen::MatrixXcd product(2, 3);
    product << 0.6, 0, 0, 0.8, 0, 0;
    const auto p = schmidt_squared(product);
    CHECK(p.is_uniform());
    CHECK(p.support() == 1);

    Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(2, 2);
    bell(0, 0) = bell(1, 1) = 1 / std::sqrt(2.0);
    const auto b = schmidt_squared(bell).dense();
    REQUIRE(b.size() == 2);
    CHECK(b(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b(1) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(schmidt_squared(2 * bell), NormError);
    CHECK_NOTHROW(schmidt_squared((1 + 5e-9) * bell));
}

TEST_CASE("schmidt_squared against bidiagonalization oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index da = 1 + trial % 4, db = 1 + (trial / 4) % 4;
        check_against_oracle(oracle::random_state(rng, da, db), 1e-9);
    }
    check_against_oracle(oracle::random_state(rng, 3, 3), 1e-9);
    check_against_oracle(oracle::random_state(rng, 8, 16), 1e-9);
}

TEST_CASE("local unitary invariance") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXcd a = oracle::random_state(rng, 3, 4);
        const Eigen::MatrixXcd b = oracle::random_unitary(rng, 3) * a * oracle::random_unitary(rng, 4);
        const auto pa = schmidt_squared(a).dense(), pb = schmidt_squared(b).dense();
        REQUIRE(pa.size() == pb.size());
        CHECK((pa - pb).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("pure state forms") {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
    a(0, 0) = std::sqrt(0.7);
    a(1, 1) = std::sqrt(0.3);
    CHECK_NOTHROW(PureState::from_both(a, Distribution::from_probs({0.7, 0.3})));
    CHECK_THROWS_AS(PureState::from_both(a, Distribution::from_probs({0.6, 0.4})), DistributionError);
    const auto s = PureState::from_schmidt(Distribution::from_probs({0.5, 0.5}));
    CHECK_FALSE(s.amplitudes().has_value());
}

TEST_CASE("locc fidelity via storage") {
    std::mt19937_64 rng(13);
    const auto psi = PureState::from_amplitudes(oracle::random_state(rng, 3, 3));
    CHECK(locc_fidelity_via_storage(psi, psi, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    const auto max4 = PureState::from_schmidt(Distribution::uniform(4));
    for (int trial = 0; trial < 10; ++trial) {
        const auto phi = PureState::from_amplitudes(oracle::random_state(rng, 4, 4));
        CHECK(locc_fidelity_via_storage(max4, phi, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    }

    for (int trial = 0; trial < 20; ++trial) {
        const auto a = PureState::from_amplitudes(oracle::random_state(rng, 4, 4));
        const auto b = PureState::from_amplitudes(oracle::random_state(rng, 4, 3));
        double prev = -1;
        for (double n_pairs : {0.0, 0.5, 1.0, 1.585, 2.0, 3.0}) {
            const double f = locc_fidelity_via_storage(a, b, n_pairs);
            CHECK(f == max_fidelity_majorization_with_storage(a.schmidt_sq(), b.schmidt_sq(), n_pairs).fidelity);
            CHECK(f >= prev - 1e-15);
            prev = f;
        }
    }
}

TEST_CASE("pure intermediate grid oracle") {
    // psi -> rank-2 pure intermediate R (needs P_psi majorized by R) -> phi.
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const auto psi = PureState::from_amplitudes(oracle::random_state(rng, 3, 3));
        const auto phi = PureState::from_amplitudes(oracle::random_state(rng, 3, 3));
        double best = 0;
        for (int i = 100; i <= 200; ++i) {
            const double r0 = i / 200.0;
            const auto r = Distribution::from_probs({r0, 1 - r0});
            if (!is_majorized(psi.schmidt_sq(), r)) continue;
            best = std::max(best, max_fidelity_majorization(r, phi.schmidt_sq()).fidelity);
        }
        CHECK(std::abs(locc_fidelity_via_storage(psi, phi, 1.0) - best) <= 2e-3);
    }
}

TEST_CASE("locc_max_recovery") {
    const auto psi = PureState::from_schmidt(Distribution::from_probs({0.8, 0.2}));
    const auto phi = PureState::from_schmidt(Distribution::from_probs({0.7, 0.3}));
    CHECK(locc_max_recovery(psi, psi, 0.9, 20, std::nullopt) >= 20);
    for (std::int64_t n : {8, 16}) {
        const auto wide = iid_power(psi.schmidt_sq().cast<long double>(), n);
        for (std::optional<double> bits : {std::optional<double>{}, std::optional<double>{6.0}}) {
            CHECK(locc_max_recovery(psi, phi, 0.8, n, bits) ==
                  max_convertible_number(wide, phi.schmidt_sq().cast<long double>(), 0.8, bits,
                                         ConversionMode::Majorization));
        }
    }
}

TEST_CASE("compression_loss") {
    const auto psi = PureState::from_schmidt(Distribution::from_probs({0.75, 0.25}));
    const double nu = 0.9;
    const double v = varentropy_bits(psi.schmidt_sq());
    const double cross = std::sqrt(v) * special::phi_inv(nu * nu);
    CHECK(std::abs(compression_loss(psi, nu, cross, 100)) <= 1e-8);
    CHECK(compression_loss(psi, nu, cross - 0.5, 100) > 0);
    CHECK(compression_loss(psi, nu, cross + 0.5, 100) < 0);
    CHECK_THROWS_AS(compression_loss(PureState::from_schmidt(Distribution::uniform(4)), nu, 0.0, 10), UniformError);
}
