#include "blaschke/norms.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <cmath>
#include <vector>

namespace blaschke {

namespace {

// Fixed-shape pairwise summation; result independent of evaluation schedule.
double pairwise_sum(const double* v, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Midpoint-rule mean of a 2pi-periodic function at K nodes.
template <class F>
double periodic_mean(F&& f, int K) {
    std::vector<double> vals(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j)
        vals[static_cast<size_t>(j)] = f(kTwoPi * (j + 0.5) / K);
    return pairwise_sum(vals) / K;
}

// Doubles the node count (at most max_doublings times) until two consecutive
// estimates agree to rel_tol.
template <class F>
double adaptive_periodic_mean(F&& f, int K0, double rel_tol, const char* what,
                              int max_doublings = 4) {
    double prev = periodic_mean(f, K0);
    int K = K0;
    for (int d = 0; d < max_doublings; ++d) {
        K *= 2;
        double cur = periodic_mean(f, K);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw NumericError(std::string(what) +
                       ": boundary quadrature did not converge within 4 doublings");
}

constexpr double kGL8x[4] = {0.1834346424956498, 0.5255324099163290,
                             0.7966664774136267, 0.9602898564975363};
constexpr double kGL8w[4] = {0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

constexpr double kGL16x[8] = {0.0950125098376374, 0.2816035507792589,
                              0.4580167776572274, 0.6178762444026438,
                              0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
constexpr double kGL16w[8] = {0.1894506104550685, 0.1826034150449236,
                              0.1691565193950025, 0.1495959888165767,
                              0.1246289712555339, 0.0951585116824928,
                              0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss8(F&& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += kGL8w[i] * (f(c - h * kGL8x[i]) + f(c + h * kGL8x[i]));
    return s * h;
}

template <class F>
double gauss16(F&& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (int i = 0; i < 8; ++i)
        s += kGL16w[i] * (f(c - h * kGL16x[i]) + f(c + h * kGL16x[i]));
    return s * h;
}

void require_p_unit(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError(std::string(what) + ": p must lie in (0,1)");
}

} // namespace

void QuadratureConfig::validate() const {
    if (boundary_samples < 64)
        throw ValidationError("QuadratureConfig: boundary_samples must be >= 64");
    if (refinement_depth < 0 || refinement_depth > 30)
        throw ValidationError("QuadratureConfig: refinement_depth must be in [0, 30]");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ValidationError("QuadratureConfig: rel_tol must lie in (0, 1)");
    if (radial_levels < 1)
        throw ValidationError("QuadratureConfig: radial_levels must be >= 1");
    if (!(radial_offset > 0.0 && radial_offset < 1.0))
        throw ValidationError("QuadratureConfig: radial_offset must lie in (0, 1)");
}

double integral_mean(const BlaschkeProduct& B, double p, double r,
                     const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("integral_mean: p must lie in (0,1]");
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("integral_mean: r must lie in (0,1)");
    if (B.degree() == 0) return 0.0;
    double mean = adaptive_periodic_mean(
        [&](double t) {
            return std::pow(std::abs(derivative(B, std::polar(r, t))), p);
        },
        cfg.boundary_samples, cfg.rel_tol, "integral_mean");
    return std::pow(mean, 1.0 / p);
}

double hp_norm(const BlaschkeProduct& B, double p, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("hp_norm: p must lie in (0,1]");
    if (B.degree() == 0) return 0.0;
    double mean = adaptive_periodic_mean(
        [&](double t) { return std::pow(boundary_derivative(B, BoundaryPoint(t)), p); },
        cfg.boundary_samples, cfg.rel_tol, "hp_norm");
    double norm = std::pow(mean, 1.0 / p);
    double interior = integral_mean(B, p, 1.0 - cfg.radial_offset, cfg);
    if (std::abs(interior - norm) > 0.01 * norm)
        throw NumericError("hp_norm: boundary/interior cross-check mismatch above 1% "
                           "(zero clustering beyond quadrature resolution)");
    return norm;
}

namespace {

// Angular integral int_0^{2pi} |B'(r e^{it})|^q dt. Interior circles are far
// smoother than the boundary, so start with a small node count and let the
// doubling run up to the same ceiling the boundary rule would reach.
double angular_power_integral(const BlaschkeProduct& B, double q, double r,
                              const QuadratureConfig& cfg, const char* what) {
    int K0 = std::max(64, cfg.boundary_samples / 32);
    int ceiling = cfg.boundary_samples * 16;
    int doublings = 0;
    while (K0 << doublings < ceiling) ++doublings;
    return kTwoPi * adaptive_periodic_mean(
                        [&](double t) {
                            return std::pow(std::abs(derivative(B, std::polar(r, t))), q);
                        },
                        K0, cfg.rel_tol, what, doublings);
}

} // namespace

double besov_norm(const BlaschkeProduct& B, double q, double s,
                  const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(q > 0.0)) throw ValidationError("besov_norm: q must be positive");
    if (!(s > 0.0 && s < 1.0)) throw ValidationError("besov_norm: s must lie in (0,1)");
    double beta = (1.0 - s) * q - 1.0;
    if (beta <= -1.0) throw ValidationError("besov_norm: weight exponent not integrable");
    if (B.degree() == 0) return 0.0;

    auto integrand = [&](double r) {
        return angular_power_integral(B, q, r, cfg, "besov_norm") *
               std::pow(1.0 - r, beta) * r;
    };

    int L = cfg.radial_levels;
    double total = gauss8(integrand, 0.0, 0.5); // u in [1/2, 1]
    for (int k = 1; k < L; ++k)
        total += gauss8(integrand, 1.0 - std::ldexp(1.0, -k), 1.0 - std::ldexp(1.0, -k - 1));

    // Tail band u in (0, 2^-L]: freeze the angular factor at the inner edge,
    // integrate the weight exactly.
    double T = std::ldexp(1.0, -L);
    double edge = angular_power_integral(B, q, 1.0 - T, cfg, "besov_norm");
    total += edge * (std::pow(T, beta + 1.0) / (beta + 1.0) -
                     std::pow(T, beta + 2.0) / (beta + 2.0));

    return std::pow(total, 1.0 / q);
}

// ---------------------------------------------------------------------------
// Sublevel-set integral
// ---------------------------------------------------------------------------

namespace {

// Polar cell [th_lo, th_hi] x [r_lo, r_hi], tracked in u = 1 - r.
struct PolarCell {
    double th_lo, th_hi;
    double u_big, u_small; // u_big = 1 - r_lo > u_small = 1 - r_hi
    int depth;
};

// Exact max of rho(m, .) over the cell, m its pseudo-hyperbolic midpoint.
// For fixed r the max sits at the angular endpoints; along r the quotient
// (1-r^2)/(1+|m|^2 r^2 - 2 tau r) has a single critical point.
double cell_rho_radius(const PolarCell& cell, cplx m) {
    double mm = std::abs(m);
    double half = 0.5 * (cell.th_hi - cell.th_lo);
    double cd = std::cos(std::min(half, kPi));
    double tau = mm * cd;
    double r1 = 1.0 - cell.u_big, r2 = 1.0 - cell.u_small;

    auto rho_at = [&](double r) {
        double denom = 1.0 + mm * mm * r * r - 2.0 * tau * r;
        double val = 1.0 - (1.0 - mm * mm) * (1.0 - r * r) / denom;
        return std::sqrt(std::max(val, 0.0));
    };

    double best = std::max(rho_at(r1), rho_at(r2));
    if (tau > 0.0) {
        double A = 1.0 + mm * mm;
        double disc = A * A - 4.0 * tau * tau;
        if (disc >= 0.0) {
            double rc = (A - std::sqrt(disc)) / (2.0 * tau);
            if (rc > r1 && rc < r2) best = std::max(best, rho_at(rc));
        }
    }
    return best;
}

// int over the cell of (1-|z|)^{-(1+p)} dm, closed form.
double cell_weight(const PolarCell& cell, double p) {
    double dth = cell.th_hi - cell.th_lo;
    double a = (std::pow(cell.u_small, -p) - std::pow(cell.u_big, -p)) / p;
    double b = (std::pow(cell.u_big, 1.0 - p) - std::pow(cell.u_small, 1.0 - p)) / (1.0 - p);
    return dth * (a - b);
}

// Smallest dyadic 1 - u beyond which prod_n rho(|z|, |z_n|) >= c on the whole
// circle |z| = 1 - u, certifying the outer annulus free of the sublevel set.
double outer_clear_u(const BlaschkeProduct& B, double c) {
    double gap_min = 1.0;
    for (const auto& e : B.zeros().entries())
        gap_min = std::min(gap_min, 1.0 - e.point.abs());
    double u = 0.5 * gap_min;
    while (u > 1e-17) {
        double logprod = 0.0;
        for (const auto& e : B.zeros().entries()) {
            double g = 1.0 - e.point.abs();
            double rho = e.point.abs();
            logprod += e.multiplicity * std::log((g - u) / (g + rho * u));
        }
        if (logprod >= std::log(c)) return u;
        u *= 0.5;
    }
    throw NumericError("sublevel_integral: cannot certify an outer clear annulus");
}

} // namespace

Enclosure sublevel_integral(const BlaschkeProduct& B, double c, double p,
                            const QuadratureConfig& cfg) {
    cfg.validate();
    require_p_unit(p, "sublevel_integral");
    if (!(c > 0.0 && c < 1.0)) throw ValidationError("sublevel_integral: c must lie in (0,1)");
    if (B.degree() == 0) return {0.0, 0.0}; // |B| == 1 everywhere

    double u_out = outer_clear_u(B, c);

    // Generation-wise refinement: classify every straddling cell of one depth,
    // then subdivide the survivors. Stops as soon as the undecided mass is
    // within the tolerance budget, so deep budgets only get used when needed.
    double lower = 0.0;
    double straddle_weight = 0.0;
    std::vector<PolarCell> current, next;
    current.push_back({0.0, kTwoPi, 1.0, u_out, 0});

    for (int depth = 0; depth <= cfg.refinement_depth && !current.empty(); ++depth) {
        next.clear();
        straddle_weight = 0.0;
        for (const PolarCell& cell : current) {
            double u_c = std::sqrt(cell.u_big * cell.u_small);
            cplx m = std::polar(1.0 - u_c, 0.5 * (cell.th_lo + cell.th_hi));
            double R = cell_rho_radius(cell, m);
            double b = std::abs(evaluate(B, m));

            if (R < 1.0) {
                if (b > R && (b - R) / (1.0 - R * b) >= c) continue; // fully out
                if ((b + R) / (1.0 + R * b) < c) {                   // fully in
                    lower += cell_weight(cell, p);
                    continue;
                }
            }
            straddle_weight += cell_weight(cell, p);
            if (depth < cfg.refinement_depth) {
                // Quarter the pseudo-hyperbolically longer side each round;
                // skewed cells would fatten the straddle ring.
                double r1 = 1.0 - cell.u_big, r2 = 1.0 - cell.u_small;
                double e_rad = (r2 - r1) / (1.0 - r1 * r2);
                double half = std::min(0.5 * (cell.th_hi - cell.th_lo), kPi);
                double e_ang =
                    pseudo_distance(std::polar(r2, 0.0), std::polar(r2, half));
                int n_th = 4, n_u = 4;
                if (e_ang > 2.0 * e_rad) n_u = 1;
                else if (e_rad > 2.0 * e_ang) n_th = 1;
                int d = cell.depth + 1;
                for (int i = 0; i < n_th; ++i) {
                    double ta = cell.th_lo + (cell.th_hi - cell.th_lo) * i / n_th;
                    double tb = cell.th_lo + (cell.th_hi - cell.th_lo) * (i + 1) / n_th;
                    for (int k = 0; k < n_u; ++k) {
                        // geometric subdivision in u = 1 - r
                        double ua = std::pow(cell.u_big, 1.0 - double(k) / n_u) *
                                    std::pow(cell.u_small, double(k) / n_u);
                        double ub = std::pow(cell.u_big, 1.0 - double(k + 1) / n_u) *
                                    std::pow(cell.u_small, double(k + 1) / n_u);
                        next.push_back({ta, tb, ua, ub, d});
                    }
                }
            }
        }
        double mid = lower + 0.5 * straddle_weight;
        if (std::getenv("BLASCHKE_SUBLEVEL_TRACE"))
            std::fprintf(stderr, "gen %2d cells %zu lower %.6f straddle %.3e\n", depth,
                         current.size(), lower, straddle_weight);
        if (straddle_weight <= 0.5 * cfg.rel_tol * mid) break;
        if (next.size() > (size_t{1} << 22))
            throw NumericError("sublevel_integral: cell budget exhausted");
        current.swap(next);
    }

    Enclosure enc{lower, lower + straddle_weight};
    if (enc.width() > cfg.rel_tol * std::max(enc.midpoint(), 1e-300))
        throw NumericError("sublevel_integral: enclosure width above rel_tol after full "
                           "refinement (c too close to a critical level of |B|)");
    return enc;
}

// ---------------------------------------------------------------------------
// Carleson-type log integral
// ---------------------------------------------------------------------------

double carleson_integral(const BlaschkeProduct& B, double p,
                         const QuadratureConfig& cfg) {
    cfg.validate();
    require_p_unit(p, "carleson_integral");
    if (B.degree() == 0) return 0.0;

    // Mean of log|B|^{-1} over the circle of radius r: each factor with zero
    // modulus rho contributes log(1/max(r, rho)) exactly.
    const auto& entries = B.zeros().entries();
    auto radial_profile = [&](double r) {
        double s = 0.0;
        for (const auto& e : entries)
            s += e.multiplicity * std::log(1.0 / std::max(r, e.point.abs()));
        return s;
    };
    auto integrand = [&](double r) {
        return radial_profile(r) * std::pow(1.0 - r, -1.0 - p) * r;
    };

    double rho_max = 0.0;
    for (const auto& e : entries) rho_max = std::max(rho_max, e.point.abs());

    int K_tail = cfg.radial_levels;
    while (std::ldexp(1.0, -K_tail) > (1.0 - rho_max) / 256.0) ++K_tail;
    K_tail = std::min(K_tail, 900); // ldexp underflow guard
    double T = std::ldexp(1.0, -K_tail);

    std::vector<double> grid;
    grid.push_back(0.0);
    for (const auto& e : entries) grid.push_back(e.point.abs());
    for (int k = 1; k <= K_tail; ++k) grid.push_back(1.0 - std::ldexp(1.0, -k));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // refine geometrically toward r = 0, where r log(1/r) is not analytic
    double first_pos = 0.0;
    for (double g : grid)
        if (g > 0.0) { first_pos = g; break; }
    if (first_pos > 0.0)
        for (double g = 0.5 * first_pos; g > 1e-14; g *= 0.5) grid.push_back(g);
    std::sort(grid.begin(), grid.end());

    double total = 0.0;
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i + 1] > grid[i]) total += gauss16(integrand, grid[i], grid[i + 1]);

    // Exact tail over [1-T, 1): all zeros lie below, so the profile is
    // degree * log(1/r); expand r log(1/r) = u - u^2/2 - u^3/6 - u^4/12 + O(u^5).
    double kappa = B.degree();
    double tail = std::pow(T, 1.0 - p) / (1.0 - p) -
                  std::pow(T, 2.0 - p) / (2.0 * (2.0 - p)) -
                  std::pow(T, 3.0 - p) / (6.0 * (3.0 - p)) -
                  std::pow(T, 4.0 - p) / (12.0 * (4.0 - p));
    total += kappa * tail;

    return kTwoPi * total;
}

double weak_hp_quasinorm(const BlaschkeProduct& B, double p,
                         const QuadratureConfig& cfg) {
    cfg.validate();
    require_p_unit(p, "weak_hp_quasinorm");
    if (B.degree() == 0) return 0.0;

    int K = cfg.boundary_samples;
    std::vector<double> vals(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j)
        vals[static_cast<size_t>(j)] =
            boundary_derivative(B, BoundaryPoint(kTwoPi * (j + 0.5) / K));
    std::sort(vals.begin(), vals.end());

    double lo = vals.front(), hi = vals.back();
    if (!(hi > 0.0)) return 0.0;
    if (hi - lo <= 1e-12 * hi) return std::pow(hi, p); // flat distribution, sup at lambda -> hi

    const int grid = 512;
    double llo = std::log(lo), lhi = std::log(hi);
    double best = 0.0;
    for (int j = 0; j < grid; ++j) {
        double lam = std::exp(llo + (j + 0.5) * (lhi - llo) / grid);
        auto it = std::upper_bound(vals.begin(), vals.end(), lam);
        double measure = double(vals.end() - it) / K;
        best = std::max(best, std::pow(lam, p) * measure);
    }
    return best;
}

double mixed_besov_norm(const BlaschkeProduct& B, double p, double q,
                        double alpha, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(p > 0.0 && p <= 1.0))
        throw ValidationError("mixed_besov_norm: p must lie in (0,1]");
    if (!(q > 0.0)) throw ValidationError("mixed_besov_norm: q must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("mixed_besov_norm: alpha must lie in (0,1)");
    double gamma = (1.0 - alpha) * q; // weight integrates to u^gamma / gamma
    if (B.degree() == 0) return 0.0;  // B' vanishes identically

    auto integrand = [&](double r) {
        return std::pow(integral_mean(B, p, r, cfg), q) *
               std::pow(1.0 - r, gamma - 1.0);
    };

    int L = cfg.radial_levels;
    double total = gauss8(integrand, 1e-12, 0.5);
    for (int k = 1; k < L; ++k)
        total += gauss8(integrand, 1.0 - std::ldexp(1.0, -k), 1.0 - std::ldexp(1.0, -k - 1));

    double T = std::ldexp(1.0, -L);
    double edge = std::pow(integral_mean(B, p, 1.0 - T, cfg), q);
    total += edge * std::pow(T, gamma) / gamma;

    return std::pow(total, 1.0 / q);
}

} // namespace blaschke
