#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "grnconv/asymptotics.hpp"
#include "grnconv/distribution.hpp"

// grnconv command line: CSV figure data, finite-n sweeps and oracle self-checks.
namespace grnconv::cli {

enum ExitCode : int { kOk = 0, kConfigFailure = 2, kNumericFailure = 3, kVerifyFailure = 4 };

struct RunConfig {
    std::string command;
    std::optional<std::filesystem::path> source, target, psi, phi, out;
    /// Preset parameter families: fig2, fig3 (z-curve) and fig8 (ratio).
    std::string family;
    std::vector<double> v, s;
    double mu = 0, mu_min = -4, mu_max = 4;
    int grid = 81;
    /// --hp --vp --hq --vq instead of distribution files.
    std::optional<std::array<double, 4>> moments;
    std::optional<double> s1;
    std::vector<double> s2, t2;
    double s2_min = -3, s2_max = 3;
    double nu = 0.9;
    std::vector<std::int64_t> n;
    std::optional<double> n_bits;
    int order = 2;
    std::optional<double> tol;
    std::uint64_t seed = 1;
};

/// 12 significant digits; "inf", "-inf" and "NA" for non-finite values.
std::string format_number(double x);

/// Parses a real, accepting "inf" and "-inf".
double parse_real(const std::string& text);

struct FiniteNPoint {
    std::int64_t n = 0;
    double storage_bits = 0;
    std::int64_t target_copies = 0;
    double exact = 0;
    double predicted = 0;
};

/// Exact F^M(P^n -> Q^{T_n} | S_n) with S_n = s1 n + s2 sqrt(n) bits and
/// T_n = s1/H(Q) n + t2 sqrt(n) rounded to the nearest integer, next to the
/// second-order prediction.
FiniteNPoint finite_n_fidelity(const Distribution& p, const Distribution& q, double s1, double s2, double t2,
                               std::int64_t n);

void cmd_z_curve(const RunConfig& cfg, std::ostream& out);
void cmd_region(const RunConfig& cfg, std::ostream& out);
void cmd_expand(const RunConfig& cfg, std::ostream& out);
void cmd_fidelity_finite_n(const RunConfig& cfg, std::ostream& out);
void cmd_ratio(const RunConfig& cfg, std::ostream& out);
/// Returns false if any check fails.
bool cmd_verify(const RunConfig& cfg, std::ostream& out);
void cmd_z(const RunConfig& cfg, std::ostream& out);
void cmd_fidelity(const RunConfig& cfg, std::ostream& out);
void cmd_locc(const RunConfig& cfg, std::ostream& out);

/// Parses `args` (without the program name), runs the command and maps
/// failures to exit codes: 2 configuration, 3 non-convergence, 4 verification.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grnconv::cli
