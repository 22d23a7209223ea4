#pragma once

#include <complex>
#include <vector>

#include "blaschke/errors.hpp"

namespace blaschke {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Degree cap for finite products. Beyond this the coefficient expansion used
// by the preimage solver loses too much precision.
inline constexpr int kDefaultMaxDegree = 4096;

// A point of the open unit disk.
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    cplx value() const { return {re, im}; }
    double abs() const { return std::abs(value()); }

    static DiskPoint from(cplx z) { return {z.real(), z.imag()}; }

    // Throws ValidationError unless re^2 + im^2 < 1.
    static DiskPoint checked(double re, double im);
};

// Angle on the unit circle, canonical representative in [0, 2pi).
struct BoundaryPoint {
    double theta = 0.0;

    BoundaryPoint() = default;
    explicit BoundaryPoint(double t);

    cplx value() const { return std::polar(1.0, theta); }
};

struct ZeroEntry {
    DiskPoint point;
    int multiplicity = 1;
};

// Finite multiset of disk points. Distinct points with positive multiplicities;
// repetition is always expressed through the multiplicity field.
class ZeroList {
public:
    ZeroList() = default;
    explicit ZeroList(std::vector<ZeroEntry> entries, int max_degree = kDefaultMaxDegree);

    const std::vector<ZeroEntry>& entries() const { return entries_; }
    int degree() const { return degree_; }
    bool empty() const { return entries_.empty(); }

    // Merges with an existing entry when the coordinates match exactly.
    void add(DiskPoint p, int multiplicity = 1, int max_degree = kDefaultMaxDegree);

    // One element per zero, multiplicities expanded.
    std::vector<cplx> expanded() const;

    ZeroList concatenated(const ZeroList& other) const;

private:
    std::vector<ZeroEntry> entries_;
    int degree_ = 0;
};

// Finite Blaschke product B(z) = xi * prod ((z_n - z) / (1 - conj(z_n) z))^m_n.
// The default xi is prod (|z_n|/z_n)^m_n with |z_n|/z_n := 1 for z_n = 0, so a
// single zero at the origin gives B(z) = -z.
class BlaschkeProduct {
public:
    // Degree-0 constant product B == xi. The explicit factory is the only way
    // to get an empty zero list past validation.
    static BlaschkeProduct one();

    const ZeroList& zeros() const { return zeros_; }
    cplx unimodular_factor() const { return unimodular_; }
    int degree() const { return zeros_.degree(); }

    friend BlaschkeProduct make_product(ZeroList zeros);
    friend BlaschkeProduct make_product(ZeroList zeros, cplx unimodular_factor);

private:
    BlaschkeProduct(ZeroList zeros, cplx unimodular);

    ZeroList zeros_;
    cplx unimodular_{1.0, 0.0};
};

// Builds the product with the default normalization. Rejects empty lists
// (use BlaschkeProduct::one() for the constant product) and any |z_n| >= 1.
BlaschkeProduct make_product(ZeroList zeros);

// Same, with an explicit unimodular factor in front of the raw factors
// (z_n - z)/(1 - conj(z_n) z); |factor| must be 1 within 1e-14.
BlaschkeProduct make_product(ZeroList zeros, cplx unimodular_factor);

// B(z) for |z| <= 1. Inner: |B| <= 1 inside, |B| = 1 on the circle.
cplx evaluate(const BlaschkeProduct& B, cplx z);

// B'(z) for |z| < 1. Removable singularities at the zeros are evaluated
// through the product rule, never by perturbing z.
cplx derivative(const BlaschkeProduct& B, cplx z);

// |B'(e^{i theta})| = sum_n m_n (1 - |z_n|^2) / |z_n - e^{i theta}|^2,
// the sum of Poisson kernels at the zeros. Finite for finite products.
double boundary_derivative(const BlaschkeProduct& B, BoundaryPoint theta);

// sum_n m_n (1 - |z_n|^2) / |1 - conj(z_n) z|^2  >=  |B'(z)| on the disk.
double derivative_bound(const BlaschkeProduct& B, cplx z);

// Pseudo-hyperbolic distance |z - w| / |1 - conj(z) w|.
double pseudo_distance(cplx z, cplx w);
double pseudo_distance(DiskPoint z, DiskPoint w);

// Disk automorphism tau_a(w) = (a - w) / (1 - conj(a) w); involutive.
cplx mobius_shift(DiskPoint a, cplx w);

struct PreimageSolverConfig {
    double root_tol = 1e-10;   // max allowed |B(root) - a|
    double merge_tol = 1e-8;   // roots closer than this collapse to one entry
    int newton_steps = 12;
};

// Frostman shift: the Blaschke product whose zero list is B^{-1}({a}) counted
// with multiplicity (exactly degree(B) points, all inside the disk). Roots of
// xi*num - a*den are taken from the companion matrix and polished by Newton
// steps on B(z) - a; residuals above root_tol raise NumericError.
BlaschkeProduct frostman_shift(const BlaschkeProduct& B, DiskPoint a,
                               const PreimageSolverConfig& cfg = {});

// sum_n m_n (1 - |z_n|)^e over the zero list.
double gap_power_sum(const ZeroList& zeros, double e);

} // namespace blaschke
