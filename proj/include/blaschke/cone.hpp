#pragma once

#include <vector>

#include "blaschke/core.hpp"
#include "blaschke/norms.hpp"

namespace blaschke {

// Non-tangential approach region with vertex e^{i theta}:
// { z : |z - e^{i theta}| < alpha (1 - |z|) }, alpha > 1.
struct StolzAngle {
    BoundaryPoint vertex;
    double alpha = 2.0;
};

// Strict-inequality membership; false for |z| >= 1.
bool in_stolz(cplx z, const StolzAngle& angle);

// F_{alpha,B}(theta) = sum over zeros inside the cone of mult/(1 - |z_n|).
double cone_function(const BlaschkeProduct& B, double alpha, BoundaryPoint theta);

// (1-|z_n|)^{-1} if z_n lies in the cone at theta, else 0.
double box_kernel(DiskPoint z_n, double alpha, BoundaryPoint theta);

// Arc on the circle from start to end counterclockwise; end in (start, start+2pi].
struct BoundaryArc {
    double start = 0.0;
    double end = 0.0;
    double length() const { return end - start; }
};

// Pairwise disjoint arcs (mod 2pi).
class BoundaryArcSet {
public:
    BoundaryArcSet() = default;
    explicit BoundaryArcSet(std::vector<BoundaryArc> arcs);

    const std::vector<BoundaryArc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    double total_length() const;            // radians
    double total_normalized_length() const; // fraction of the circle
    bool contains(double theta) const;

private:
    std::vector<BoundaryArc> arcs_;
};

// F is a finite sum of indicators of arcs, hence piecewise constant. The
// profile lists the sorted breakpoints and the value on each open segment
// between consecutive ones (cyclically); no breakpoints means F is constant.
struct ConeProfile {
    std::vector<double> breakpoints;
    std::vector<double> values; // values[i] on (breakpoints[i], breakpoints[i+1])
    double constant = 0.0;      // used when breakpoints is empty
};

ConeProfile cone_profile(const BlaschkeProduct& B, double alpha);

// ((1/2pi) int F^p dtheta)^{1/p}, exact via the breakpoint sweep.
double cone_norm(const BlaschkeProduct& B, double alpha, double p,
                 const QuadratureConfig& cfg);

// Exact arc decomposition of { theta : F(theta) > 2^N }.
BoundaryArcSet level_arcs(const BlaschkeProduct& B, double alpha, int N);

struct ConeCount {
    double lhs = 0.0; // (1/2pi) int #({z_n} cap cone(theta)) dtheta, exact
    double rhs = 0.0; // sum mult (1 - |z_n|)
};

ConeCount cone_count_check(const ZeroList& zeros, double alpha);

} // namespace blaschke
