#include "blaschke/cone.hpp"

#include <algorithm>
#include <cmath>

namespace blaschke {

namespace {

void require_alpha(double alpha, const char* what) {
    if (!(alpha > 1.0))
        throw ValidationError(std::string(what) + ": alpha must be > 1");
}

// The set { theta : z in cone(theta) } is the open arc |theta - arg z| < w.
// Returns the half-width w in (0, pi]; w == pi means the full circle.
double shadow_half_width(cplx z, double alpha) {
    double rho = std::abs(z);
    if (rho == 0.0) return kPi;
    double t = (rho * rho + 1.0 - alpha * alpha * (1.0 - rho) * (1.0 - rho)) / (2.0 * rho);
    if (t <= -1.0) return kPi;
    if (t >= 1.0) return 0.0; // cannot happen for alpha > 1; guard fp edge cases
    return std::acos(t);
}

} // namespace

bool in_stolz(cplx z, const StolzAngle& angle) {
    require_alpha(angle.alpha, "in_stolz");
    double az = std::abs(z);
    if (az >= 1.0) return false;
    return std::abs(z - angle.vertex.value()) < angle.alpha * (1.0 - az);
}

double cone_function(const BlaschkeProduct& B, double alpha, BoundaryPoint theta) {
    require_alpha(alpha, "cone_function");
    double sum = 0.0;
    for (const auto& e : B.zeros().entries()) {
        if (in_stolz(e.point.value(), {theta, alpha}))
            sum += e.multiplicity / (1.0 - e.point.abs());
    }
    return sum;
}

double box_kernel(DiskPoint z_n, double alpha, BoundaryPoint theta) {
    require_alpha(alpha, "box_kernel");
    cplx z = z_n.value();
    if (std::abs(z) >= 1.0) throw ValidationError("box_kernel: point outside the disk");
    return in_stolz(z, {theta, alpha}) ? 1.0 / (1.0 - std::abs(z)) : 0.0;
}

BoundaryArcSet::BoundaryArcSet(std::vector<BoundaryArc> arcs) : arcs_(std::move(arcs)) {
    double total = 0.0;
    for (const auto& a : arcs_) {
        if (!(a.end > a.start) || a.end - a.start > kTwoPi + 1e-12)
            throw ValidationError("BoundaryArcSet: malformed arc");
        total += a.length();
    }
    if (total > kTwoPi + 1e-9)
        throw ValidationError("BoundaryArcSet: arcs exceed the circle");
}

double BoundaryArcSet::total_length() const {
    double t = 0.0;
    for (const auto& a : arcs_) t += a.length();
    return t;
}

double BoundaryArcSet::total_normalized_length() const { return total_length() / kTwoPi; }

bool BoundaryArcSet::contains(double theta) const {
    double t = BoundaryPoint(theta).theta;
    for (const auto& a : arcs_) {
        if (t >= a.start && t < a.end) return true;
        double shifted = t + kTwoPi;
        if (shifted >= a.start && shifted < a.end) return true;
    }
    return false;
}

ConeProfile cone_profile(const BlaschkeProduct& B, double alpha) {
    require_alpha(alpha, "cone_profile");
    ConeProfile out;

    std::vector<double> breaks;
    for (const auto& e : B.zeros().entries()) {
        cplx z = e.point.value();
        double w = shadow_half_width(z, alpha);
        if (w <= 0.0 || w >= kPi) continue; // empty or full-circle shadow: no breakpoints
        double phi = std::arg(z);
        breaks.push_back(BoundaryPoint(phi - w).theta);
        breaks.push_back(BoundaryPoint(phi + w).theta);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    if (breaks.empty()) {
        out.constant = cone_function(B, alpha, BoundaryPoint(0.0));
        return out;
    }

    // Value on each open segment, from the membership predicate itself so the
    // sweep can never disagree with in_stolz.
    out.breakpoints = breaks;
    out.values.resize(breaks.size());
    for (size_t i = 0; i < breaks.size(); ++i) {
        double a = breaks[i];
        double b = (i + 1 < breaks.size()) ? breaks[i + 1] : breaks[0] + kTwoPi;
        out.values[i] = cone_function(B, alpha, BoundaryPoint(0.5 * (a + b)));
    }
    return out;
}

double cone_norm(const BlaschkeProduct& B, double alpha, double p,
                 const QuadratureConfig& cfg) {
    cfg.validate();
    require_alpha(alpha, "cone_norm");
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("cone_norm: p must lie in (0,1)");
    ConeProfile prof = cone_profile(B, alpha);
    if (prof.breakpoints.empty())
        return prof.constant; // constant F: ((1/2pi) int F^p)^{1/p} = F

    double acc = 0.0;
    for (size_t i = 0; i < prof.breakpoints.size(); ++i) {
        double a = prof.breakpoints[i];
        double b = (i + 1 < prof.breakpoints.size()) ? prof.breakpoints[i + 1]
                                                     : prof.breakpoints[0] + kTwoPi;
        if (prof.values[i] > 0.0) acc += (b - a) * std::pow(prof.values[i], p);
    }
    return std::pow(acc / kTwoPi, 1.0 / p);
}

BoundaryArcSet level_arcs(const BlaschkeProduct& B, double alpha, int N) {
    require_alpha(alpha, "level_arcs");
    if (N < 1) throw ValidationError("level_arcs: N must be >= 1");
    double threshold = std::ldexp(1.0, N);

    ConeProfile prof = cone_profile(B, alpha);
    if (prof.breakpoints.empty()) {
        if (prof.constant > threshold) return BoundaryArcSet({{0.0, kTwoPi}});
        return {};
    }

    size_t m = prof.breakpoints.size();
    std::vector<bool> pass(m);
    bool all = true, none = true;
    for (size_t i = 0; i < m; ++i) {
        pass[i] = prof.values[i] > threshold;
        all = all && pass[i];
        none = none && !pass[i];
    }
    if (all) return BoundaryArcSet({{0.0, kTwoPi}});
    if (none) return {};

    // Merge maximal cyclic runs of passing segments. Anchoring the scan at a
    // failing segment keeps runs intact across the 0/2pi seam.
    size_t start = 0;
    while (pass[start]) ++start;
    auto unwrap = [&](size_t pos) {
        return prof.breakpoints[pos % m] + (pos >= m ? kTwoPi : 0.0);
    };
    std::vector<BoundaryArc> arcs;
    size_t pos = start;
    while (pos < start + m) {
        if (!pass[pos % m]) { ++pos; continue; }
        size_t run_start = pos;
        while (pos < start + m && pass[pos % m]) ++pos;
        BoundaryArc arc{unwrap(run_start), unwrap(pos)};
        while (arc.start >= kTwoPi) { arc.start -= kTwoPi; arc.end -= kTwoPi; }
        arcs.push_back(arc);
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const BoundaryArc& a, const BoundaryArc& b) { return a.start < b.start; });

    return BoundaryArcSet(std::move(arcs));
}

ConeCount cone_count_check(const ZeroList& zeros, double alpha) {
    require_alpha(alpha, "cone_count_check");
    ConeCount out;
    for (const auto& e : zeros.entries()) {
        double w = shadow_half_width(e.point.value(), alpha);
        out.lhs += e.multiplicity * (2.0 * w) / kTwoPi;
        out.rhs += e.multiplicity * (1.0 - e.point.abs());
    }
    return out;
}

} // namespace blaschke
