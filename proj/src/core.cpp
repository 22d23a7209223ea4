#include "blaschke/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace blaschke {

DiskPoint DiskPoint::checked(double re, double im) {
    if (!(re * re + im * im < 1.0))
        throw ValidationError("DiskPoint: |z| must be < 1");
    return {re, im};
}

BoundaryPoint::BoundaryPoint(double t) {
    if (!std::isfinite(t)) throw ValidationError("BoundaryPoint: non-finite angle");
    theta = std::fmod(t, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi) theta = 0.0; // fmod rounding at the seam
}

ZeroList::ZeroList(std::vector<ZeroEntry> entries, int max_degree) {
    for (const auto& e : entries) add(e.point, e.multiplicity, max_degree);
}

void ZeroList::add(DiskPoint p, int multiplicity, int max_degree) {
    if (multiplicity < 1) throw ValidationError("ZeroList: multiplicity must be >= 1");
    if (!(p.re * p.re + p.im * p.im < 1.0))
        throw ValidationError("ZeroList: zero outside the open disk");
    if (degree_ + multiplicity >= max_degree)
        throw ValidationError("ZeroList: total degree exceeds configured maximum");
    for (auto& e : entries_) {
        if (e.point.re == p.re && e.point.im == p.im) {
            e.multiplicity += multiplicity;
            degree_ += multiplicity;
            return;
        }
    }
    entries_.push_back({p, multiplicity});
    degree_ += multiplicity;
}

std::vector<cplx> ZeroList::expanded() const {
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(degree_));
    for (const auto& e : entries_)
        for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.point.value());
    return out;
}

ZeroList ZeroList::concatenated(const ZeroList& other) const {
    ZeroList out = *this;
    for (const auto& e : other.entries()) out.add(e.point, e.multiplicity);
    return out;
}

namespace {

cplx default_normalization(const ZeroList& zeros) {
    cplx xi{1.0, 0.0};
    for (const auto& e : zeros.entries()) {
        cplx w = e.point.value();
        if (w == cplx{0.0, 0.0}) continue; // |z_n|/z_n := 1 at the origin
        cplx f = std::abs(w) / w;
        for (int k = 0; k < e.multiplicity; ++k) xi *= f;
    }
    return xi / std::abs(xi);
}

cplx pow_int(cplx base, int n) {
    cplx acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// One raw factor (w - z)/(1 - conj(w) z).
inline cplx factor(cplx w, cplx z) { return (w - z) / (1.0 - std::conj(w) * z); }

// d/dz of the raw factor: (|w|^2 - 1)/(1 - conj(w) z)^2.
inline cplx factor_deriv(cplx w, cplx z) {
    cplx d = 1.0 - std::conj(w) * z;
    return (std::norm(w) - 1.0) / (d * d);
}

} // namespace

BlaschkeProduct::BlaschkeProduct(ZeroList zeros, cplx unimodular)
    : zeros_(std::move(zeros)), unimodular_(unimodular) {}

BlaschkeProduct BlaschkeProduct::one() { return BlaschkeProduct(ZeroList{}, cplx{1.0, 0.0}); }

BlaschkeProduct make_product(ZeroList zeros) {
    if (zeros.empty())
        throw ValidationError("make_product: empty zero list (use BlaschkeProduct::one())");
    cplx xi = default_normalization(zeros);
    return BlaschkeProduct(std::move(zeros), xi);
}

BlaschkeProduct make_product(ZeroList zeros, cplx unimodular_factor) {
    if (zeros.empty())
        throw ValidationError("make_product: empty zero list (use BlaschkeProduct::one())");
    if (std::abs(std::abs(unimodular_factor) - 1.0) > 1e-14)
        throw ValidationError("make_product: |unimodular_factor| != 1");
    return BlaschkeProduct(std::move(zeros), unimodular_factor);
}

cplx evaluate(const BlaschkeProduct& B, cplx z) {
    cplx acc = B.unimodular_factor();
    for (const auto& e : B.zeros().entries())
        acc *= pow_int(factor(e.point.value(), z), e.multiplicity);
    return acc;
}

cplx derivative(const BlaschkeProduct& B, cplx z) {
    const auto& entries = B.zeros().entries();
    if (entries.empty()) return {0.0, 0.0};

    // Split off the factor nearest to z so the logarithmic-derivative sum over
    // the rest never sees a vanishing denominator: B = b_k^m R, and
    // B' = m b_k' b_k^{m-1} R + b_k^m R', with R'/R summed in closed form.
    size_t k = 0;
    double best = std::abs(entries[0].point.value() - z);
    for (size_t i = 1; i < entries.size(); ++i) {
        double d = std::abs(entries[i].point.value() - z);
        if (d < best) { best = d; k = i; }
    }

    cplx wk = entries[k].point.value();
    int mk = entries[k].multiplicity;
    cplx bk = factor(wk, z);
    cplx bk_d = factor_deriv(wk, z);

    cplx rest = B.unimodular_factor();
    cplx rest_logderiv{0.0, 0.0};
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i == k) continue;
        cplx w = entries[i].point.value();
        int m = entries[i].multiplicity;
        rest *= pow_int(factor(w, z), m);
        rest_logderiv += double(m) * (std::norm(w) - 1.0) /
                         ((w - z) * (1.0 - std::conj(w) * z));
    }

    return double(mk) * bk_d * pow_int(bk, mk - 1) * rest +
           pow_int(bk, mk) * rest * rest_logderiv;
}

double boundary_derivative(const BlaschkeProduct& B, BoundaryPoint theta) {
    cplx u = theta.value();
    double sum = 0.0;
    for (const auto& e : B.zeros().entries()) {
        cplx w = e.point.value();
        sum += e.multiplicity * (1.0 - std::norm(w)) / std::norm(w - u);
    }
    return sum;
}

double derivative_bound(const BlaschkeProduct& B, cplx z) {
    double sum = 0.0;
    for (const auto& e : B.zeros().entries()) {
        cplx w = e.point.value();
        sum += e.multiplicity * (1.0 - std::norm(w)) / std::norm(1.0 - std::conj(w) * z);
    }
    return sum;
}

double pseudo_distance(cplx z, cplx w) {
    return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

double pseudo_distance(DiskPoint z, DiskPoint w) {
    return pseudo_distance(z.value(), w.value());
}

cplx mobius_shift(DiskPoint a, cplx w) {
    cplx av = a.value();
    return (av - w) / (1.0 - std::conj(av) * w);
}

double gap_power_sum(const ZeroList& zeros, double e) {
    double sum = 0.0;
    for (const auto& entry : zeros.entries())
        sum += entry.multiplicity * std::pow(1.0 - entry.point.abs(), e);
    return sum;
}

namespace {

// Coefficients of prod (w_i - z) and prod (1 - conj(w_i) z), ascending powers.
void numerator_denominator(const std::vector<cplx>& ws,
                           std::vector<cplx>& num, std::vector<cplx>& den) {
    num = {cplx{1.0, 0.0}};
    den = {cplx{1.0, 0.0}};
    for (cplx w : ws) {
        std::vector<cplx> n2(num.size() + 1, cplx{0.0, 0.0});
        for (size_t i = 0; i < num.size(); ++i) {
            n2[i] += w * num[i];
            n2[i + 1] -= num[i];
        }
        num.swap(n2);
        std::vector<cplx> d2(den.size() + 1, cplx{0.0, 0.0});
        cplx cw = std::conj(w);
        for (size_t i = 0; i < den.size(); ++i) {
            d2[i] += den[i];
            d2[i + 1] -= cw * den[i];
        }
        den.swap(d2);
    }
}

std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
    int n = static_cast<int>(coeffs.size()) - 1;
    cplx lead = coeffs.back();
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[static_cast<size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
    std::vector<cplx> roots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return roots;
}

} // namespace

BlaschkeProduct frostman_shift(const BlaschkeProduct& B, DiskPoint a,
                               const PreimageSolverConfig& cfg) {
    if (B.degree() == 0) throw ValidationError("frostman_shift: degree-0 product");
    cplx av = DiskPoint::checked(a.re, a.im).value();

    std::vector<cplx> num, den;
    numerator_denominator(B.zeros().expanded(), num, den);

    // xi*num(z) - a*den(z) = 0; degree is exactly deg(B) since |xi| = 1 > |a den_lead|.
    cplx xi = B.unimodular_factor();
    std::vector<cplx> poly(num.size());
    for (size_t i = 0; i < num.size(); ++i)
        poly[i] = xi * num[i] - av * (i < den.size() ? den[i] : cplx{0.0, 0.0});

    std::vector<cplx> roots = companion_roots(poly);

    for (auto& r : roots) {
        for (int it = 0; it < cfg.newton_steps; ++it) {
            cplx f = evaluate(B, r) - av;
            if (std::abs(f) < 0.05 * cfg.root_tol) break;
            cplx df = derivative(B, r);
            if (df == cplx{0.0, 0.0}) break;
            cplx step = f / df;
            cplx cand = r - step;
            int halvings = 0;
            while (std::abs(cand) >= 1.0 && halvings < 40) {
                step *= 0.5;
                cand = r - step;
                ++halvings;
            }
            if (std::abs(cand) >= 1.0) break;
            r = cand;
        }
    }

    for (cplx r : roots) {
        double res = std::abs(evaluate(B, r) - av);
        if (!(res < cfg.root_tol))
            throw NumericError("frostman_shift: root residual " + std::to_string(res) +
                               " above tolerance (clustered or ill-conditioned zeros)");
        if (!(std::abs(r) < 1.0))
            throw NumericError("frostman_shift: root escaped the open disk");
    }

    // Cluster numerically coincident roots into multiplicities.
    std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    ZeroList zl;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        int mult = 1;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) < cfg.merge_tol) {
                used[j] = true;
                ++mult;
            }
        }
        zl.add(DiskPoint::from(roots[i]), mult);
    }
    return make_product(std::move(zl));
}

} // namespace blaschke
