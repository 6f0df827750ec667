#include <doctest.h>

#include <cmath>
#include <random>

#include "grnconv/special_fns.hpp"
#include "oracles/special_oracles.hpp"

using namespace grnconv;
using namespace grnconv::special;

TEST_CASE("phi basic values") {
    CHECK(phi(0.0) == 0.5);
    CHECK(std::abs(phi(40.0) - 1.0) <= 1e-15);
    // Frozen from the series oracle.
    CHECK(std::abs(oracle::phi_series(1.0) - 0.841344746068542948) <= 1e-15);
    CHECK(std::abs(phi(1.0) - 0.841344746068542948) <= 1e-15);
}

TEST_CASE("phi agrees with series oracle on [-3, 3]") {
    for (double x = -3.0; x <= 3.0; x += 0.0625)
        CHECK(std::abs(phi(x) - oracle::phi_series(x)) <= 1e-15);
}

TEST_CASE("phi monotone and symmetric") {
    double prev = 0.0;
    for (double x = -40.0; x <= 40.0; x += 0.01) {
        const double y = phi(x);
        CHECK(y >= prev);
        prev = y;
    }
    for (double x = -10.0; x <= 10.0; x += 0.05) CHECK(std::abs(phi(x) + phi(-x) - 1.0) <= 1e-14);
}

TEST_CASE("log_phi deep tail") {
    // Asymptotic: log Phi(x) ~ log N(x) - log|x| for very negative x.
    const double x = -200.0;
    const double approx = log_pdf(x) - std::log(-x) + std::log1p(-1.0 / (x * x));
    CHECK(std::abs(log_phi(x) - approx) <= 1e-9 * std::abs(approx));
    CHECK(std::abs(log_phi(-10.0) - std::log(phi(-10.0))) <= 1e-12);
    CHECK(std::abs(log_phi(-25.0) - std::log(phi(-25.0))) <= 1e-10);
}

TEST_CASE("phi_inv") {
    CHECK(std::abs(phi_inv(0.5)) <= 1e-15);
    CHECK(std::abs(phi_inv(phi(1.3)) - 1.3) <= 1e-10);
    const double ref = oracle::bisect_increasing([](double x) { return phi(x); }, 0.975, -10, 10);
    CHECK(std::abs(ref - 1.959963984540054) <= 1e-12);
    CHECK(std::abs(phi_inv(0.975) - 1.959963984540054) <= 1e-12);
    for (double p : {1e-300, 1e-20, 1e-5, 0.01, 0.3, 0.7, 0.99, 1 - 1e-10})
        CHECK(std::abs(phi(phi_inv(p)) - p) <= 1e-12);
    CHECK_THROWS_AS(phi_inv(0.0), DomainError);
    CHECK_THROWS_AS(phi_inv(1.0), DomainError);
}

TEST_CASE("general normal") {
    CHECK(normal_cdf({0, 1}, 0.0) == 0.5);
    CHECK(normal_cdf({2, 4}, 2.0) == 0.5);
    CHECK(std::abs(normal_cdf({1, 2}, 0.0) - phi(-1 / std::sqrt(2.0))) <= 1e-16);
    CHECK(std::abs(normal_pdf({0, 4}, 0.0) - 1.0 / std::sqrt(8.0 * M_PI)) <= 1e-16);
    CHECK_THROWS_AS(NormalParams(0.0, 0.0), DomainError);
    const NormalParams p(0.3, 2.0);
    CHECK(std::abs(normal_cdf_diff(p, 5.0, 6.0) - (normal_cdf(p, 6.0) - normal_cdf(p, 5.0))) <= 1e-15);
    CHECK(std::abs(std::exp(log_normal_cdf_diff(p, -1.0, 0.5)) - normal_cdf_diff(p, -1.0, 0.5)) <= 1e-15);
}

TEST_CASE("integrate") {
    auto n01 = [](double x) { return pdf(x); };
    CHECK(std::abs(integrate(n01, -40, 40) - 1.0) <= 1e-10);
    auto self = [](double x) { return std::sqrt(pdf(x) * pdf(x)); };
    CHECK(std::abs(integrate(self, -40, 40) - 1.0) <= 1e-10);
    const NormalParams shifted(2.0, 1.0);
    auto bhat = [&](double x) { return std::sqrt(pdf(x) * normal_pdf(shifted, x)); };
    CHECK(std::abs(integrate(bhat, -40, 40) - std::exp(-0.5)) <= 1e-10);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_d(-5, 5), v_d(0.05, 20);
    for (int i = 0; i < 50; ++i) {
        const NormalParams q(mu_d(rng), v_d(rng));
        auto f = [&](double x) { return normal_pdf(q, x); };
        const double r = 40 * q.sd();
        CHECK(std::abs(integrate(f, q.mu - r, q.mu + r, 1e-11) - 1.0) <= 1e-10);
    }
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(std::abs(x)); }, -1, 1, 1e-14,
                              std::span<const double>{}, 50),
                    ConvergenceError);
}

TEST_CASE("find_root") {
    CHECK(std::abs(find_root([](double x) { return x - 1; }, 0, 2) - 1) <= 1e-12);
    CHECK(std::abs(find_root([](double x) { return phi(x) - 0.5; }, -1, 1)) <= 1e-12);
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1, 1), BracketError);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const double c = u(rng), lo = c - 1 - std::abs(u(rng)), hi = c + 0.01 + std::abs(u(rng));
        const double x = find_root([&](double t) { return std::tanh(t - c); }, lo, hi);
        CHECK(x >= lo);
        CHECK(x <= hi);
        CHECK(std::abs(x - c) <= 1e-11);
    }
    // Residual with infinite values on one side still converges by bisection.
    const double x = find_root([](double t) { return t < 0 ? -kInf : t - 0.25; }, -5, 5);
    CHECK(std::abs(x - 0.25) <= 1e-12);
}
