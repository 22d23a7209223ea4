#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blaschke/cone.hpp"
#include "blaschke/core.hpp"
#include "blaschke/dyadic.hpp"
#include "blaschke/norms.hpp"

namespace blaschke {

// Counter-based generator; the same (seed, counter) pair yields the same
// double on any platform, so generated instances are portable.
struct SplitMix64 {
    std::uint64_t seed = 0;

    static std::uint64_t mix(std::uint64_t x);
    double uniform(std::uint64_t counter) const; // [0, 1)
};

enum class FamilyKind {
    radial_separated,   // z_j = 1 - 2^{-j}, j = 1..depth
    stolz_confined,     // level_counts[j] points at modulus 1 - 2^{-j} inside Gamma_beta(1)
    dyadic_pattern,     // zeros at top-part centers of chosen levels
    uniform_random,     // n area-uniform points with |z| <= max_radius
    single_zero_scaling // one zero at 1 - delta
};

const char* family_kind_name(FamilyKind kind);
FamilyKind family_kind_from_name(const std::string& name);

struct FamilySpec {
    FamilyKind kind = FamilyKind::radial_separated;
    int depth = 8;                              // J
    double beta = 2.0;                          // Stolz aperture
    std::vector<std::int64_t> level_counts;     // stolz_confined N_j (empty: all 1)
    std::vector<int> pattern_levels;            // dyadic_pattern levels
    int pattern_stride = 1;                     // take every stride-th sector
    int pattern_count = 1;                      // multiplicity per chosen center
    int n = 100;                                // uniform_random count
    double max_radius = 0.99;
    double delta = 0.125;                       // single_zero_scaling gap
    std::vector<double> delta_grid;             // sweep grid for the gap
    std::uint64_t seed = 0;
    std::string rng = "splitmix64";
};

// Deterministic zero list for the spec.
ZeroList generate(const FamilySpec& spec);

struct LabConfig {
    QuadratureConfig quad;
    PreimageSolverConfig solver;
    int tree_depth = 40;
    int family_n_max = 34; // truncation for the maximal-family sum
};

// Every functional of one product at one parameter set. Fields of failed
// functionals are NaN and the failure is recorded instead of aborting.
struct FunctionalReport {
    double p = 0.0, alpha = 0.0, c = 0.0;
    int degree = 0;
    double hp_norm_p = 0.0;     // ||B'||_{H^p}^p
    double cone_norm_p = 0.0;   // ||F_{alpha,B}||_p^p
    double sublevel_Ic = 0.0;
    double sublevel_width = 0.0;
    double besov_q1_sp = 0.0;
    double carleson_log = 0.0;
    double weak_hp = 0.0;
    double dyadic_count = 0.0;  // sum N(Q)^p l(Q)^{1-p}
    double family_sum = 0.0;    // sum 2^{Np} l(E_N)
    double family_tail = 0.0;
    double annulus_sum = 0.0;   // sum 2^{-j(1-p)} N_j^p
    double gap_sum = 0.0;       // sum (1 - |z_n|)^{1-p}
    std::vector<std::string> errors;
};

FunctionalReport functional_report(const ZeroList& zeros, double p, double alpha,
                                   double c, const LabConfig& cfg);

// Named single-number functionals for sweeps and the CLI.
double evaluate_functional(const std::string& name, const ZeroList& zeros, double p,
                           double alpha, double c, const LabConfig& cfg);
std::vector<std::string> functional_names();

struct SweepPoint {
    double delta = 0.0;
    double value = 0.0;
};

struct SweepResult {
    std::string functional;
    double p = 0.0, alpha = 0.0, c = 0.0;
    std::vector<SweepPoint> points;
    double slope = 0.0; // least-squares slope of log(value) against log(delta)
};

// Requires >= 5 grid members spanning >= 2 decades, otherwise the fitted
// exponent would soak up the comparability constants.
SweepResult sweep_exponent(const FamilySpec& spec, const std::string& functional,
                           double p, double alpha, double c, const LabConfig& cfg);

struct RatioBand {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    int samples = 0;

    void absorb(double r);
    double spread() const; // max/min, infinity when empty or degenerate
};

struct SweepReport {
    double p = 0.0, alpha = 0.0, c = 0.0;
    std::vector<std::string> member_kinds;
    std::vector<FunctionalReport> members;
    RatioBand sublevel_vs_hp; // I(c)^{1/p} / ||B'||_{H^p}
    RatioBand cone_vs_hp;     // ||F||_p / ||B'||_{H^p}
    RatioBand besov_vs_hp;    // besov(q=1,s=p) / ||B'||^p
    RatioBand alpha_band;     // cone norms across alpha in {1.5, 2, 4}
    RatioBand c_band;         // I(c)^{1/p} across c in {1/4, 1/2, 3/4}
};

SweepReport theorem1_ratios(const std::vector<FamilySpec>& specs, double p,
                            double alpha, double c, const LabConfig& cfg);

double fit_loglog_slope(const std::vector<SweepPoint>& points);

} // namespace blaschke
