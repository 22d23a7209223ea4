#pragma once

#include <string>

#include "blaschke/core.hpp"

namespace blaschke {

// Knobs for every numeric integral in the toolkit. Boundary integrals use the
// normalized measure dtheta/2pi, area integrals plain Lebesgue measure dm.
struct QuadratureConfig {
    int boundary_samples = 8192;  // initial nodes of the composite boundary rule
    int radial_levels = 24;       // geometric radii 1 - 2^{-k} for area integrals
    int refinement_depth = 12;    // max subdivision generations for sublevel cells
    double rel_tol = 1e-3;
    double radial_offset = 1e-6;  // near-boundary evaluation radius 1 - offset

    void validate() const;
};

struct NormReport {
    double p = 0.0, alpha = 0.0, c = 0.0;
    double hp_norm_p = 0.0;      // ||B'||_{H^p}^p
    double besov_q1_sp = 0.0;    // Besov norm at q = 1, s = p
    double sublevel_Ic = 0.0;    // I(c) enclosure midpoint
    double sublevel_width = 0.0; // enclosure width
    double carleson_log = 0.0;
    double cone_norm_p = 0.0;    // ||F_{alpha,B}||_p^p, filled by the cone module
    double weak_hp = 0.0;
};

// ((1/2pi) int |B'(r e^{i t})|^p dt)^{1/p}. Composite midpoint rule starting at
// cfg.boundary_samples nodes, doubled (at most 4 times) until rel_tol.
double integral_mean(const BlaschkeProduct& B, double p, double r,
                     const QuadratureConfig& cfg);

// sup_r of the means. For finite products the means increase in r, so this is
// the boundary quadrature of (boundary_derivative)^(p), cross-checked against
// integral_mean at r = 1 - cfg.radial_offset (mismatch > 1% raises NumericError).
double hp_norm(const BlaschkeProduct& B, double p, const QuadratureConfig& cfg);

// (int_D |B'|^q (1-|z|)^{(1-s)q-1} dm)^{1/q} over geometric radial bands.
double besov_norm(const BlaschkeProduct& B, double q, double s,
                  const QuadratureConfig& cfg);

struct Enclosure {
    double lower = 0.0;
    double upper = 0.0;
    double midpoint() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

// I(c) = int over {|B| < c} of (1-|z|)^{-(1+p)} dm. Adaptive polar cells
// classified by a Schwarz-Pick certificate; returns the [lower, upper]
// enclosure. Width above rel_tol * value after full refinement raises
// NumericError (c too close to a critical level of |B|).
Enclosure sublevel_integral(const BlaschkeProduct& B, double c, double p,
                            const QuadratureConfig& cfg);

// int_D log|B|^{-1} (1-|z|)^{-(1+p)} dm. The angular mean of log|B|^{-1} on
// each circle is a finite sum of exact one-zero means, so only the radial
// integral is numeric (segmented Gauss rule with geometric refinement).
double carleson_integral(const BlaschkeProduct& B, double p,
                         const QuadratureConfig& cfg);

// sup over a logarithmic lambda grid of lambda^p * (normalized measure of
// {theta : boundary_derivative > lambda}), from sorted boundary samples.
double weak_hp_quasinorm(const BlaschkeProduct& B, double p,
                         const QuadratureConfig& cfg);

// (int_0^1 M_p(r, B')^q (1-r)^{(1-alpha)q-1} dr)^{1/q}.
double mixed_besov_norm(const BlaschkeProduct& B, double p, double q,
                        double alpha, const QuadratureConfig& cfg);

} // namespace blaschke
