#include "grnconv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/SVD>

#include "grnconv/grn.hpp"
#include "grnconv/json_io.hpp"
#include "grnconv/majorization.hpp"
#include "grnconv/quantum.hpp"
#include "grnconv/special_fns.hpp"

namespace grnconv::cli {

using asymptotics::SourceTargetProfile;
using special::kInf;

std::string format_number(double x) {
    if (std::isnan(x)) return "NA";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

double parse_real(const std::string& text) {
    if (text == "inf" || text == "+inf") return kInf;
    if (text == "-inf") return -kInf;
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: " + text);
    }
    if (used != text.size() || !std::isfinite(x)) throw ConfigError("not a number: " + text);
    return x;
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) throw ConfigError("grid must be at least 2");
    if (!(lo < hi)) throw ConfigError("range must be non-empty");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return out;
}

void require_nu(double nu) {
    if (!(nu > 0 && nu < 1)) throw ConfigError("--nu must lie in (0,1)");
}

Distribution need_distribution(const std::optional<std::filesystem::path>& path, const char* flag) {
    if (!path) throw ConfigError(std::string(flag) + " is required");
    return json_io::read_distribution(*path);
}

SourceTargetProfile load_profile(const RunConfig& cfg) {
    if (cfg.family == "fig8") return SourceTargetProfile::from_moments(1, 1, 1, 1);
    if (cfg.moments) {
        const auto& m = *cfg.moments;
        return SourceTargetProfile::from_moments(m[0], m[1], m[2], m[3]);
    }
    return asymptotics::profile(need_distribution(cfg.source, "--source"), need_distribution(cfg.target, "--target"));
}

double first_or(const std::vector<double>& xs, double fallback) { return xs.empty() ? fallback : xs.front(); }

std::string tag(const std::string& name, double x) { return name + "=" + format_number(x); }

}  // namespace

FiniteNPoint finite_n_fidelity(const Distribution& p, const Distribution& q, double s1, double s2, double t2,
                               std::int64_t n) {
    if (n < 1) throw ConfigError("n must be positive");
    const auto prof = asymptotics::profile(p, q);
    FiniteNPoint pt;
    pt.n = n;
    const double rn = static_cast<double>(n);
    pt.storage_bits = s1 * rn + s2 * std::sqrt(rn);
    pt.target_copies = std::llround(s1 / prof.H_q * rn + t2 * std::sqrt(rn));
    pt.predicted = asymptotics::second_order_fidelity(prof, s1, s2, t2);
    if (pt.target_copies < 1) {
        pt.exact = 1;
        return pt;
    }
    if (pt.storage_bits < 0) throw ConfigError("storage size is negative at this n");
    const auto source = iid_power(p.cast<long double>(), n);
    const auto target = iid_power(q.cast<long double>(), pt.target_copies);
    pt.exact = static_cast<double>(max_fidelity_majorization_with_storage(source, target, pt.storage_bits).fidelity);
    return pt;
}

void cmd_z_curve(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::pair<double, double>> pairs;
    if (cfg.family == "fig2") {
        for (double s : {-0.5, 0.0, 0.5, 1.0, kInf}) pairs.emplace_back(1.0 / 3, s);
    } else if (cfg.family == "fig3") {
        for (double v : {0.0, 1.0 / 3, 1.0, 3.0}) pairs.emplace_back(v, 0.5);
    } else if (!cfg.family.empty()) {
        throw ConfigError("unknown family for z-curve: " + cfg.family);
    } else {
        if (cfg.v.empty() || cfg.s.empty()) throw ConfigError("z-curve needs --v and --s, or --family");
        const std::size_t count = std::max(cfg.v.size(), cfg.s.size());
        if ((cfg.v.size() != count && cfg.v.size() != 1) || (cfg.s.size() != count && cfg.s.size() != 1))
            throw ConfigError("--v and --s lists must have equal length or length one");
        for (std::size_t i = 0; i < count; ++i)
            pairs.emplace_back(cfg.v[cfg.v.size() == 1 ? 0 : i], cfg.s[cfg.s.size() == 1 ? 0 : i]);
    }
    std::vector<grn::GrnParams> params;
    for (const auto& [v, s] : pairs) {
        try {
            params.emplace_back(v, s);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }

    const auto grid = linspace(cfg.mu_min, cfg.mu_max, cfg.grid);
    out << "mu";
    for (const auto& [v, s] : pairs) out << ",Z(" << tag("v", v) << ';' << tag("s", s) << ')';
    out << '\n';
    for (double mu : grid) {
        out << format_number(mu);
        for (const auto& prm : params) out << ',' << format_number(grn::z_eval(prm, mu));
        out << '\n';
    }
}

void cmd_region(const RunConfig& cfg, std::ostream& out) {
    const auto prof = load_profile(cfg);
    if (cfg.order == 1) {
        if (cfg.grid < 2) throw ConfigError("grid must be at least 2");
        // The semi-admissible segment up to the corner, then the flat part beyond it.
        std::vector<double> grid;
        for (int k = 1; k <= 2 * cfg.grid; ++k) grid.push_back(prof.H_p * k / cfg.grid);
        out << "s1,t1,class\n";
        for (double s1 : grid) {
            const asymptotics::RatePair1 r{s1, std::min(prof.H_p, s1) / prof.H_q};
            out << format_number(r.s1) << ',' << format_number(r.t1) << ','
                << asymptotics::to_string(asymptotics::classify_rate1(prof, r)) << '\n';
        }
        return;
    }
    if (cfg.order != 2) throw ConfigError("--order must be 1 or 2");
    require_nu(cfg.nu);
    const double s1 = cfg.s1.value_or(prof.H_p);
    const auto grid = linspace(cfg.s2_min, cfg.s2_max, cfg.grid);
    out << "s2,t2(" << tag("nu", cfg.nu) << ';' << tag("s1", s1) << "),class\n";
    for (double s2 : grid) {
        const double t2 = asymptotics::second_order_fidelity_inverse(prof, s1, s2, cfg.nu);
        out << format_number(s2) << ',' << format_number(t2) << ','
            << asymptotics::to_string(asymptotics::classify_rate2(prof, s1, cfg.nu, {s2, t2})) << '\n';
    }
}

void cmd_expand(const RunConfig& cfg, std::ostream& out) {
    require_nu(cfg.nu);
    const auto p = need_distribution(cfg.source, "--source");
    const auto q = need_distribution(cfg.target, "--target");
    const auto prof = asymptotics::profile(p, q);
    const double s1 = cfg.s1.value_or(prof.H_p), s2 = first_or(cfg.s2, 0.0);
    if (cfg.n.empty()) throw ConfigError("expand needs --n");
    out << "n,predicted_L(" << tag("s1", s1) << ';' << tag("s2", s2) << ';' << tag("nu", cfg.nu) << "),exact_LM\n";
    for (std::int64_t n : cfg.n) {
        const double predicted = asymptotics::expansion_L(prof, s1, s2, cfg.nu, n);
        double exact = std::nan("");
        const double rn = static_cast<double>(n);
        const double bits = s1 * rn + s2 * std::sqrt(rn);
        if (bits >= 0) {
            try {
                const auto source = iid_power(p.cast<long double>(), n);
                exact = static_cast<double>(max_convertible_number(source, q.cast<long double>(), cfg.nu, bits,
                                                                   ConversionMode::Majorization));
            } catch (const SizeError&) {
            }
        }
        out << n << ',' << format_number(predicted) << ',' << format_number(exact) << '\n';
    }
}

void cmd_fidelity_finite_n(const RunConfig& cfg, std::ostream& out) {
    const auto p = need_distribution(cfg.source, "--source");
    const auto q = need_distribution(cfg.target, "--target");
    const double s1 = cfg.s1.value_or(entropy_bits(p));
    if (cfg.n.empty()) throw ConfigError("fidelity-finite-n needs --n");
    const std::vector<double> s2s = cfg.s2.empty() ? std::vector<double>{0.0} : cfg.s2;
    const std::vector<double> t2s = cfg.t2.empty() ? std::vector<double>{0.0} : cfg.t2;
    out << "n,s2,t2,S_n,T_n,exact,predicted,gap\n";
    for (double s2 : s2s)
        for (double t2 : t2s)
            for (std::int64_t n : cfg.n) {
                const auto pt = finite_n_fidelity(p, q, s1, s2, t2, n);
                out << n << ',' << format_number(s2) << ',' << format_number(t2) << ','
                    << format_number(pt.storage_bits) << ',' << pt.target_copies << ',' << format_number(pt.exact)
                    << ',' << format_number(pt.predicted) << ',' << format_number(std::abs(pt.exact - pt.predicted))
                    << '\n';
            }
}

void cmd_ratio(const RunConfig& cfg, std::ostream& out) {
    const auto prof = load_profile(cfg);
    std::vector<double> t2s = cfg.t2;
    if (t2s.empty()) t2s = cfg.family == "fig8" ? std::vector<double>{0.0, -3.0, -6.0} : std::vector<double>{0.0};
    const auto grid = linspace(cfg.s2_min, cfg.s2_max, cfg.grid);
    out << "s2";
    for (double t2 : t2s) out << ",ratio(" << tag("t2", t2) << ')';
    out << '\n';
    for (double s2 : grid) {
        out << format_number(s2);
        for (const auto& r : asymptotics::ratio_curve(prof, s2, t2s))
            out << ',' << (r ? format_number(*r) : std::string("NA"));
        out << '\n';
    }
}

namespace {

// Closed form of F^M(P -> U_N): keep the top J atoms, spread the rest.
double uniform_target_closed_form(std::vector<double> p, int n) {
    std::sort(p.begin(), p.end(), std::greater<>());
    const int d = static_cast<int>(p.size());
    std::vector<double> tail(static_cast<std::size_t>(d) + 1, 0.0);
    for (int i = d - 1; i >= 0; --i) tail[i] = tail[i + 1] + p[i];
    int cut = 0;
    for (int j = 1; j <= std::min(n - 1, d); ++j)
        if (tail[j] / (n - j) < p[j - 1]) cut = j;
    double sum = 0;
    for (int j = 0; j < cut; ++j) sum += std::sqrt(p[j]);
    sum += std::sqrt((n - cut) * tail[cut]);
    return sum / std::sqrt(static_cast<double>(n));
}

std::vector<double> random_probs(std::mt19937_64& rng, int d) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(static_cast<std::size_t>(d));
    double s = 0;
    for (auto& x : v) s += (x = e(rng));
    for (auto& x : v) x /= s;
    return v;
}

struct Check {
    std::string name;
    double tolerance;
    std::function<double(std::mt19937_64&)> worst;
};

}  // namespace

bool cmd_verify(const RunConfig& cfg, std::ostream& out) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(2, 8);

    const std::vector<Check> checks = {
        {"z_closed_form_vs_variational", 1e-3,
         [](std::mt19937_64&) {
             double worst = 0;
             for (double v : {1.0 / 3, 1.0, 3.0})
                 for (double s : {0.0, 0.5})
                     for (double mu : {-1.0, 0.0, 1.0})
                         worst = std::max(worst, std::abs(grn::z_eval({v, s}, mu) - grn::z_oracle({v, s}, mu)));
             return worst;
         }},
        {"z_unit_variance_exact", 1e-12,
         [](std::mt19937_64&) {
             double worst = 0;
             for (double s : {-0.5, 0.5, 1.0})
                 for (double mu = -5; mu <= 0; mu += 0.25)
                     worst = std::max(worst, std::abs(grn::z_eval({1.0, s}, mu) - special::phi(mu - s)));
             return worst;
         }},
        {"z_cdf_monotone", 1e-15,
         [](std::mt19937_64&) {
             double worst = 0;
             for (double v : {0.0, 0.5, 1.0, 2.0})
                 for (double s : {-0.5, 0.5, kInf}) {
                     double prev = 0;
                     for (double mu = -8; mu <= 8; mu += 0.1) {
                         const double z = grn::z_eval({v, s}, mu);
                         worst = std::max({worst, prev - z, z - 1, -z});
                         prev = z;
                     }
                 }
             return worst;
         }},
        {"uniform_target_closed_form", 1e-10,
         [&](std::mt19937_64& g) {
             double worst = 0;
             for (int trial = 0; trial < 50; ++trial) {
                 const auto p = random_probs(g, pick(g) + 2);
                 const int n = std::uniform_int_distribution<int>(1, 16)(g);
                 const double f = max_fidelity_majorization(Distribution::from_probs(p), Distribution::uniform(n)).fidelity;
                 worst = std::max(worst, std::abs(f - uniform_target_closed_form(p, n)));
             }
             return worst;
         }},
        {"pav_vs_active_set_enumeration", 1e-9,
         [&](std::mt19937_64& g) {
             double worst = 0;
             for (int trial = 0; trial < 50; ++trial) {
                 const auto p = Distribution::from_probs(random_probs(g, pick(g)));
                 const auto q = Distribution::from_probs(random_probs(g, pick(g)));
                 const double a = max_fidelity_majorization(p, q).fidelity;
                 const double b = max_fidelity_majorization(p, q, MajorizationSolver::ActiveSetEnumeration).fidelity;
                 worst = std::max(worst, std::abs(a - b));
             }
             return worst;
         }},
        {"kkt_residual", 1e-8,
         [&](std::mt19937_64& g) {
             double worst = 0;
             for (int trial = 0; trial < 50; ++trial) {
                 const auto p = Distribution::from_probs(random_probs(g, pick(g)));
                 const auto q = Distribution::from_probs(random_probs(g, pick(g)));
                 worst = std::max(worst, kkt_residual(p, q, max_fidelity_majorization(p, q)));
             }
             return worst;
         }},
        {"deterministic_below_majorization", 1e-12,
         [&](std::mt19937_64& g) {
             double worst = 0;
             std::uniform_int_distribution<int> small(2, 4);
             for (int trial = 0; trial < 30; ++trial) {
                 const auto p = Distribution::from_probs(random_probs(g, small(g) + 1));
                 const auto q = Distribution::from_probs(random_probs(g, small(g)));
                 const double fd = max_fidelity_deterministic(p, q);
                 worst = std::max({worst, fd - max_fidelity_majorization(p, q).fidelity,
                                   std::abs(fd - max_fidelity_deterministic_by_maps(p, q))});
             }
             return worst;
         }},
        {"schmidt_vs_svd", 1e-9,
         [](std::mt19937_64& g) {
             double worst = 0;
             std::normal_distribution<double> gauss;
             std::uniform_int_distribution<int> dim(1, 4);
             for (int trial = 0; trial < 20; ++trial) {
                 Eigen::MatrixXcd a(dim(g), dim(g));
                 for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = {gauss(g), gauss(g)};
                 a /= a.norm();
                 const auto p = quantum::schmidt_squared(a).dense();
                 const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
                 for (Eigen::Index i = 0; i < sv.size(); ++i)
                     worst = std::max(worst, std::abs((i < p.size() ? p(i) : 0.0) - sv(i) * sv(i)));
             }
             return worst;
         }},
    };

    out << "check,status,worst,tolerance\n";
    bool all = true;
    for (const auto& c : checks) {
        const double tol = cfg.tol.value_or(c.tolerance);
        const double worst = c.worst(rng);
        const bool ok = worst <= tol;
        all = all && ok;
        out << c.name << ',' << (ok ? "PASS" : "FAIL") << ',' << format_number(worst) << ',' << format_number(tol)
            << '\n';
    }
    return all;
}

void cmd_z(const RunConfig& cfg, std::ostream& out) {
    try {
        const grn::GrnParams prm(first_or(cfg.v, 1.0), first_or(cfg.s, kInf));
        out << format_number(grn::z_eval(prm, cfg.mu)) << '\n';
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

void cmd_fidelity(const RunConfig& cfg, std::ostream& out) {
    const auto prof = load_profile(cfg);
    const double s1 = cfg.s1.value_or(prof.H_p);
    const double f = asymptotics::second_order_fidelity(prof, s1, first_or(cfg.s2, 0.0), first_or(cfg.t2, 0.0));
    out << "fidelity,admissible_branch\n"
        << format_number(f) << ',' << (asymptotics::is_admissible_storage_rate(prof, s1) ? "yes" : "no") << '\n';
}

void cmd_locc(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.psi || !cfg.phi) throw ConfigError("locc needs --psi and --phi");
    if (!cfg.n_bits) throw ConfigError("locc needs --n-bits (storage qubit pairs)");
    const auto psi = json_io::read_state(*cfg.psi);
    const auto phi = json_io::read_state(*cfg.phi);
    out << format_number(quantum::locc_fidelity_via_storage(psi, phi, *cfg.n_bits)) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Random number conversion through restricted storage"};
    app.require_subcommand(1);

    auto real_option = [](CLI::App* sub, const std::string& name, double& target, const std::string& help) {
        sub->add_option_function<std::string>(name, [&target](const std::string& x) { target = parse_real(x); }, help);
    };
    auto real_list = [](CLI::App* sub, const std::string& name, std::vector<double>& target, const std::string& help) {
        sub->add_option_function<std::vector<std::string>>(
               name,
               [&target](const std::vector<std::string>& xs) {
                   target.clear();
                   for (const auto& x : xs) target.push_back(parse_real(x));
               },
               help)
            ->delimiter(',');
    };
    auto optional_real = [](CLI::App* sub, const std::string& name, std::optional<double>& target,
                            const std::string& help) {
        sub->add_option_function<std::string>(name, [&target](const std::string& x) { target = parse_real(x); }, help);
    };
    std::array<std::optional<double>, 4> moments;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "CSV output file");
        sub->add_option("--grid", cfg.grid, "grid points");
        sub->add_option("--seed", cfg.seed, "seed for randomized instances");
        optional_real(sub, "--tol", cfg.tol, "tolerance override");
    };
    auto distributions = [&](CLI::App* sub) {
        sub->add_option("--source", cfg.source, "source distribution JSON");
        sub->add_option("--target", cfg.target, "target distribution JSON");
    };
    auto profile_flags = [&](CLI::App* sub) {
        distributions(sub);
        optional_real(sub, "--hp", moments[0], "H(P) in bits");
        optional_real(sub, "--vp", moments[1], "V(P) in bits^2");
        optional_real(sub, "--hq", moments[2], "H(Q) in bits");
        optional_real(sub, "--vq", moments[3], "V(Q) in bits^2");
    };
    auto rates = [&](CLI::App* sub) {
        optional_real(sub, "--s1", cfg.s1, "first-order storage rate (default H(P))");
        real_list(sub, "--s2", cfg.s2, "second-order storage rate(s)");
        real_list(sub, "--t2", cfg.t2, "second-order target rate(s)");
        real_option(sub, "--nu", cfg.nu, "fidelity level");
    };

    auto* z_curve = app.add_subcommand("z-curve", "CSV of Z_{v,s}(mu) over a mu grid");
    common(z_curve);
    z_curve->add_option("--family", cfg.family, "fig2 or fig3");
    real_list(z_curve, "--v", cfg.v, "variance parameter(s)");
    real_list(z_curve, "--s", cfg.s, "truncation point(s), inf allowed");
    real_option(z_curve, "--mu-min", cfg.mu_min, "grid lower end");
    real_option(z_curve, "--mu-max", cfg.mu_max, "grid upper end");

    auto* region = app.add_subcommand("region", "boundary of the first- or second-order rate region");
    common(region);
    profile_flags(region);
    rates(region);
    region->add_option("--order", cfg.order, "1 or 2");
    real_option(region, "--s2-min", cfg.s2_min, "grid lower end");
    real_option(region, "--s2-max", cfg.s2_max, "grid upper end");

    auto* expand = app.add_subcommand("expand", "predicted vs exact maximal convertible numbers");
    common(expand);
    distributions(expand);
    rates(expand);
    expand->add_option("--n", cfg.n, "block lengths")->delimiter(',');

    auto* finite = app.add_subcommand("fidelity-finite-n", "exact finite-n fidelity vs second-order prediction");
    common(finite);
    distributions(finite);
    rates(finite);
    finite->add_option("--n", cfg.n, "block lengths")->delimiter(',');

    auto* ratio = app.add_subcommand("ratio", "fidelity ratio with and without storage restriction");
    common(ratio);
    profile_flags(ratio);
    rates(ratio);
    ratio->add_option("--family", cfg.family, "fig8");
    real_option(ratio, "--s2-min", cfg.s2_min, "grid lower end");
    real_option(ratio, "--s2-max", cfg.s2_max, "grid upper end");

    auto* verify = app.add_subcommand("verify", "oracle self-checks");
    common(verify);

    auto* z = app.add_subcommand("z", "single value of Z_{v,s}(mu)");
    common(z);
    real_list(z, "--v", cfg.v, "");
    real_list(z, "--s", cfg.s, "");
    real_option(z, "--mu", cfg.mu, "");

    auto* fidelity = app.add_subcommand("fidelity", "second-order optimal fidelity");
    common(fidelity);
    profile_flags(fidelity);
    rates(fidelity);

    auto* locc = app.add_subcommand("locc", "LOCC fidelity through N qubit pairs of storage");
    common(locc);
    locc->add_option("--psi", cfg.psi, "source state JSON");
    locc->add_option("--phi", cfg.phi, "target state JSON");
    optional_real(locc, "--n-bits", cfg.n_bits, "storage qubit pairs");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigFailure;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    }

    const int given = static_cast<int>(std::count_if(moments.begin(), moments.end(), [](auto& m) { return m.has_value(); }));
    if (given == 4) cfg.moments = std::array<double, 4>{*moments[0], *moments[1], *moments[2], *moments[3]};

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    std::ofstream file;
    std::ostream* sink = &out;
    try {
        if (given != 0 && given != 4) throw ConfigError("--hp --vp --hq --vq must be given together");
        if (cfg.out) {
            file.open(*cfg.out);
            if (!file) throw ConfigError("cannot write " + cfg.out->string());
            sink = &file;
        }
        const std::string& c = cfg.command;
        if (c == "z-curve") cmd_z_curve(cfg, *sink);
        else if (c == "region") cmd_region(cfg, *sink);
        else if (c == "expand") cmd_expand(cfg, *sink);
        else if (c == "fidelity-finite-n") cmd_fidelity_finite_n(cfg, *sink);
        else if (c == "ratio") cmd_ratio(cfg, *sink);
        else if (c == "verify") return cmd_verify(cfg, *sink) ? kOk : kVerifyFailure;
        else if (c == "z") cmd_z(cfg, *sink);
        else if (c == "fidelity") cmd_fidelity(cfg, *sink);
        else if (c == "locc") cmd_locc(cfg, *sink);
    } catch (const ConvergenceError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const BracketError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    }
    return kOk;
}

}  // namespace grnconv::cli
