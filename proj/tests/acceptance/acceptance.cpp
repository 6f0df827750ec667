// Acceptance battery: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grnconv/asymptotics.hpp"
#include "grnconv/cli.hpp"
#include "grnconv/grn.hpp"
#include "grnconv/majorization.hpp"
#include "grnconv/quantum.hpp"
#include "grnconv/special_fns.hpp"
#include "oracles/majorization_oracles.hpp"
#include "oracles/quantum_oracles.hpp"

using namespace grnconv;
using special::kInf;
using special::phi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<double> dense(const Distribution& p) {
    const auto d = p.dense();
    return {d.data(), d.data() + d.size()};
}

Distribution random_distribution(std::mt19937_64& rng, int max_support) {
    const int d = std::uniform_int_distribution<int>(1, max_support)(rng);
    return Distribution::from_probs(oracle::random_simplex(rng, d));
}

std::vector<std::vector<std::string>> run_csv(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

// 1. Closed form against the variational oracle.
Outcome closed_form_vs_oracle() {
    constexpr double kTol = 1e-3;
    constexpr int kGrid = 400;
    double worst = 0;
    for (double v : {1.0 / 3, 1.0, 3.0})
        for (double s : {-0.5, 0.0, 0.5, 1.0})
            for (double mu : {-2.0, -1.0, 0.0, 1.0, 2.0})
                worst = std::max(worst, std::abs(grn::z_eval({v, s}, mu) - grn::z_oracle({v, s}, mu, kGrid)));
    return {worst <= kTol, fmt("worst |z_eval - z_oracle| = %.3g (tol %.0e)", worst, kTol)};
}

// 2. Z_{1,s}(mu) = Phi(mu - s) for mu <= 0.
Outcome unit_variance_exact() {
    constexpr double kTol = 1e-12;
    double worst = 0;
    int points = 0;
    for (double s : {-0.5, 0.0, 0.5, 1.0, kInf})
        for (int i = 0; i < 10; ++i, ++points) {
            const double mu = -4.5 + 0.5 * i;
            worst = std::max(worst, std::abs(grn::z_eval({1.0, s}, mu) - phi(mu - s)));
        }
    return {worst <= kTol && points == 50, fmt("%.0f points, worst error %.3g (tol %.0e)", points, worst, kTol)};
}

// 3. CDF property on 12 (v, s) pairs.
Outcome cdf_suite() {
    constexpr double kUlpSlack = 1e-15;
    int violations = 0;
    for (double v : {1.0 / 3, 1.0, 3.0})
        for (double s : {-1.0, 0.0, 0.5, kInf}) {
            const double w = 10 * std::max(1.0, std::sqrt(v));
            double prev = 0;
            for (int i = 0; i < 200; ++i) {
                const double z = grn::z_eval({v, s}, -w + 2 * w * i / 199);
                if (z < prev - kUlpSlack || z < 0 || z > 1) ++violations;
                prev = z;
            }
            if (grn::z_eval({v, s}, -w) > 1e-6) ++violations;
            if (grn::z_eval({v, s}, w) < 1 - 1e-3) ++violations;
        }
    return {violations == 0, fmt("%.0f violations over 12 pairs", violations)};
}

// 4. Limits: v -> 0, v -> inf and s -> inf.
Outcome limit_suite() {
    constexpr double kSmallV = 2e-2, kLargeV = 2e-2, kLargeS = 1e-6;
    double worst_small = 0, worst_large = 0, worst_s = 0;
    for (double s : {-1.0, 0.0, 0.5})
        for (double mu = -3; mu <= 3 + 1e-9; mu += 0.1) {
            if (std::abs(mu - s) <= 0.2) continue;
            worst_small = std::max(worst_small, std::abs(grn::z_eval({1e-4, s}, mu) - (mu < s ? phi(mu) : 1.0)));
        }
    const double v = 1e6, r = std::sqrt(v);
    for (double s : {-1.0, 0.5})
        for (double mu = -3; mu <= 3 + 1e-9; mu += 0.25)
            worst_large = std::max(worst_large,
                                   std::abs(grn::z_eval({v, r * s}, r * mu) - grn::z_limit_v_to_infinity(s, mu)));
    bool ordered = true;
    for (double vv : {1.0 / 3, 1.0, 3.0})
        for (double mu = -3; mu <= 3 + 1e-9; mu += 0.25) {
            const double d = grn::z_eval({vv, 50.0}, mu) - grn::z_eval({vv, kInf}, mu);
            ordered = ordered && d >= 0;
            worst_s = std::max(worst_s, std::abs(d));
        }
    return {worst_small <= kSmallV && worst_large <= kLargeV && worst_s <= kLargeS && ordered,
            fmt("v->0 %.3g, v->inf %.3g, s=50 vs inf %.3g", worst_small, worst_large, worst_s)};
}

// 5. F^M against uniform targets equals the cut formula.
Outcome uniform_target_closed_form() {
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(501);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const auto p = oracle::random_simplex(rng, std::uniform_int_distribution<int>(1, 20)(rng));
        const int n = std::uniform_int_distribution<int>(1, 64)(rng);
        const double f = max_fidelity_majorization(Distribution::from_probs(p), Distribution::uniform(n)).fidelity;
        worst = std::max(worst, std::abs(f - oracle::uniform_target_fidelity(p, n)));
    }
    return {worst <= kTol, fmt("worst deviation %.3g over 100 cases (tol %.0e)", worst, kTol)};
}

// 6. Two-stage optimum through C_K(P) equals the best support-K intermediate.
Outcome storage_reduction() {
    constexpr double kTol = 2e-3;
    constexpr int kSteps = 200;
    std::mt19937_64 rng(601);
    double worst = 0;
    bool dominated = true;
    for (int i = 0; i < 50; ++i) {
        const auto p = random_distribution(rng, 6), q = random_distribution(rng, 6);
        const int k = std::uniform_int_distribution<int>(1, 4)(rng);
        const double via_c = max_fidelity_majorization_with_storage(p, q, std::log2(double(k))).fidelity;
        const auto pd = dense(p);
        double best = 0;
        oracle::for_each_grid_distribution(k, kSteps, [&](const std::vector<double>& x) {
            if (!oracle::majorized_dense(pd, x)) return;
            best = std::max(best, max_fidelity_majorization(Distribution::from_probs(x), q).fidelity);
        });
        dominated = dominated && best <= via_c + 1e-12;
        worst = std::max(worst, via_c - best);
    }
    return {dominated && worst <= kTol, fmt("worst gap to grid search %.3g (tol %.0e)", worst, kTol)};
}

// 7. Pool-adjacent solver against active-set enumeration.
Outcome solver_certification() {
    constexpr double kTol = 1e-9;
    std::mt19937_64 rng(701);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto p = random_distribution(rng, 10), q = random_distribution(rng, 10);
        const double a = max_fidelity_majorization(p, q).fidelity;
        const double b = max_fidelity_majorization(p, q, MajorizationSolver::ActiveSetEnumeration).fidelity;
        worst = std::max(worst, std::abs(a - b));
    }
    return {worst <= kTol, fmt("worst |PAV - enumeration| = %.3g (tol %.0e)", worst, kTol)};
}

// 8. F^D <= F^M, L^M >= L^D and the uniform-target sandwich.
Outcome order_relations() {
    constexpr double kSlack = 1e-12;
    std::mt19937_64 rng(801);
    int bad_f = 0, bad_l = 0, bad_sandwich = 0, sandwiches = 0;
    for (int i = 0; i < 100; ++i) {
        const auto a = random_distribution(rng, 7), b = random_distribution(rng, 4);
        if (max_fidelity_deterministic(a, b) > max_fidelity_majorization(a, b).fidelity + kSlack) ++bad_f;
    }
    for (int i = 0; i < 30; ++i) {
        const auto src = random_distribution(rng, 8);
        const auto tgt = Distribution::from_probs(oracle::random_simplex(rng, 2));
        const double nu = std::uniform_real_distribution<double>(0.5, 0.95)(rng);
        if (max_convertible_number(src, tgt, nu, std::nullopt, ConversionMode::Majorization) <
            max_convertible_number(src, tgt, nu, std::nullopt, ConversionMode::Deterministic))
            ++bad_l;
    }
    for (int i = 0; i < 20; ++i) {
        const auto src = iid_power(Distribution::from_probs(oracle::random_simplex(rng, 3)), 6);
        const int big_n = std::uniform_int_distribution<int>(2, 3)(rng);
        const double nu = std::uniform_real_distribution<double>(0.6, 0.95)(rng);
        const auto target = Distribution::uniform(big_n);
        const auto free = max_convertible_number(src, target, nu, std::nullopt, ConversionMode::Majorization);
        for (std::int64_t m = 1; m < free; ++m, ++sandwiches) {
            const auto l = max_convertible_number(src, target, nu, m * std::log2(double(big_n)),
                                                  ConversionMode::Majorization);
            if (l < m || double(l) > m - 2 * std::log(nu) / std::log(double(big_n)) + 1e-9) ++bad_sandwich;
        }
    }
    return {bad_f == 0 && bad_l == 0 && bad_sandwich == 0 && sandwiches > 0,
            fmt("violations: fidelity %.0f/100, number %.0f/30, sandwich %.0f", bad_f, bad_l, bad_sandwich)};
}

// 9. Finite-n exact fidelity approaches the second-order prediction.
Outcome finite_n_convergence() {
    constexpr double kCap = 0.05;
    const auto p = Distribution::from_probs({0.75, 0.25});
    const auto q = Distribution::from_probs({0.6, 0.4});
    const double s1 = entropy_bits(p);
    bool monotone = true;
    double worst_final = 0, worst_s2 = 0, worst_t2 = 0;
    for (double s2 : {-1.0, 0.0, 1.0})
        for (double t2 : {-2.0, 0.0, 2.0}) {
            double prev = kInf;
            for (std::int64_t n : {256, 1024, 4096}) {
                const auto pt = cli::finite_n_fidelity(p, q, s1, s2, t2, n);
                const double gap = std::abs(pt.exact - pt.predicted);
                monotone = monotone && gap < prev;
                prev = gap;
            }
            if (prev > worst_final) {
                worst_final = prev;
                worst_s2 = s2;
                worst_t2 = t2;
            }
        }
    return {monotone && worst_final <= kCap,
            std::string(monotone ? "gaps decreasing" : "gaps NOT decreasing") +
                fmt("; largest gap at n=4096 is %.4f at (s2,t2)=(%g,%g)", worst_final, worst_s2, worst_t2) +
                fmt(" (cap %.2f)", kCap)};
}

// 10. Compression crossover.
Outcome compression_crossover() {
    constexpr double kTol = 1e-9;
    const auto p = Distribution::from_probs({0.75, 0.25});
    const auto prof = asymptotics::profile(p, p);
    const double nu = 0.9;
    const double s2 = std::sqrt(prof.V_p) * special::phi_inv(0.81);
    const double f = asymptotics::second_order_fidelity(prof, prof.H_p, s2, 0.0);
    const auto psi = quantum::PureState::from_schmidt(p);
    const double below = quantum::compression_loss(psi, nu, s2 - 0.1, 1000);
    const double above = quantum::compression_loss(psi, nu, s2 + 0.1, 1000);
    return {std::abs(f - nu) <= kTol && below > 0 && above < 0,
            fmt("|F - 0.9| = %.3g, loss below %.4g, above %.4g", std::abs(f - nu), below, above)};
}

// 11. Figure data through the command line.
Outcome figure_reproduction() {
    constexpr double kFarTol = 1e-4, kFlatTol = 1e-8;
    int code = 0;
    bool ok = true;
    auto fig2 = run_csv({"z-curve", "--family", "fig2", "--mu-min", "-4", "--mu-max", "4", "--grid", "161"}, code);
    ok = ok && code == 0;
    int order_violations = 0;
    for (std::size_t i = 1; i < fig2.size(); ++i)
        for (std::size_t c = 2; c < fig2[i].size(); ++c)
            if (std::stod(fig2[i][c]) > std::stod(fig2[i][c - 1])) ++order_violations;
    auto fig3 = run_csv({"z-curve", "--family", "fig3", "--mu-min", "-4", "--mu-max", "4", "--grid", "161"}, code);
    ok = ok && code == 0;
    double z0_err = 0;
    for (std::size_t i = 1; i < fig3.size(); ++i) {
        const double mu = std::stod(fig3[i][0]);
        z0_err = std::max(z0_err, std::abs(std::stod(fig3[i][1]) - (mu <= 0.5 ? phi(mu) : 1.0)));
    }

    auto far = run_csv({"ratio", "--family", "fig8", "--t2", "-6,-3,0,1,2,3", "--s2-min", "49", "--s2-max", "50",
                        "--grid", "2"},
                       code);
    ok = ok && code == 0;
    double far_err = 0;
    for (std::size_t c = 1; c < far.back().size(); ++c)
        far_err = std::max(far_err, far.back()[c] == "NA" ? kInf : std::abs(std::stod(far.back()[c]) - 1));

    auto flat = run_csv({"ratio", "--family", "fig8", "--t2", "0,-3,-6", "--s2-min", "-3", "--s2-max", "3", "--grid",
                         "61"},
                        code);
    ok = ok && code == 0;
    double spread = 0;
    for (std::size_t i = 1; i < flat.size(); ++i) {
        double lo = kInf, hi = -kInf;
        for (std::size_t c = 1; c < flat[i].size(); ++c) {
            const double x = std::stod(flat[i][c]);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        spread = std::max(spread, hi - lo);
    }
    ok = ok && order_violations == 0 && z0_err <= 1e-12 && far_err <= kFarTol && spread <= kFlatTol;
    return {ok, fmt("s-order violations %.0f, Z0 error %.3g, |ratio-1| at s2=50 %.3g", order_violations, z0_err,
                    far_err) +
                    fmt("; ratio spread over t2 in {0,-3,-6} %.4f (tol %.0e)", spread, kFlatTol)};
}

// 12. Quantum bridge.
Outcome quantum_bridge() {
    constexpr double kTol = 1e-9;
    std::mt19937_64 rng(1201);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_real_distribution<double> bits(0, 2.5);
    double worst = 0;
    int mismatches = 0;
    for (int i = 0; i < 20; ++i) {
        const Eigen::MatrixXcd a = oracle::random_state(rng, dim(rng), dim(rng));
        const Eigen::MatrixXcd b = oracle::random_state(rng, dim(rng), dim(rng));
        const auto psi = quantum::PureState::from_amplitudes(a);
        const auto phi_state = quantum::PureState::from_amplitudes(b);
        const double n = bits(rng);
        if (quantum::locc_fidelity_via_storage(psi, phi_state, n) !=
            max_fidelity_majorization_with_storage(psi.schmidt_sq(), phi_state.schmidt_sq(), n).fidelity)
            ++mismatches;
        const auto ref = oracle::singular_values_sq(a);
        const auto got = dense(psi.schmidt_sq());
        for (std::size_t k = 0; k < ref.size(); ++k)
            worst = std::max(worst, std::abs((k < got.size() ? got[k] : 0.0) - ref[k]));
    }
    return {mismatches == 0 && worst <= kTol,
            fmt("%.0f classical mismatches, worst Schmidt error %.3g (tol %.0e)", mismatches, worst, kTol)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"closed form vs variational oracle", closed_form_vs_oracle},
        {"Z_{1,s} = Phi(mu - s) for mu <= 0", unit_variance_exact},
        {"CDF suite", cdf_suite},
        {"limit suite", limit_suite},
        {"uniform-target closed form", uniform_target_closed_form},
        {"storage reduction through C_K", storage_reduction},
        {"solver certification", solver_certification},
        {"order relations", order_relations},
        {"finite-n convergence", finite_n_convergence},
        {"compression crossover", compression_crossover},
        {"figure reproduction", figure_reproduction},
        {"quantum bridge", quantum_bridge},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    secs);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
