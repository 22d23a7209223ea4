#include "blaschke/dyadic.hpp"

#include <algorithm>
#include <cmath>

namespace blaschke {

double sector_length(const DyadicSector& q) { return std::ldexp(1.0, 1 - q.level); }

DyadicSector sector_parent(const DyadicSector& q) {
    if (q.level <= 1) throw ValidationError("sector_parent: level-1 sector has no parent");
    return {q.level - 1, (q.index + 1) / 2};
}

std::pair<DyadicSector, DyadicSector> sector_children(const DyadicSector& q) {
    return {DyadicSector{q.level + 1, 2 * q.index - 1},
            DyadicSector{q.level + 1, 2 * q.index}};
}

namespace {

void check_sector(const DyadicSector& q) {
    if (q.level < 1 || q.level > 62)
        throw ValidationError("DyadicSector: level out of range");
    if (q.index < 1 || q.index > (std::int64_t{1} << (q.level - 1)))
        throw ValidationError("DyadicSector: index out of range");
}

// Interval intersection on Z mod M for half-open [a, a+la), [b, b+lb).
bool intervals_intersect_mod(std::int64_t a, std::int64_t la, std::int64_t b,
                             std::int64_t lb, std::int64_t M) {
    std::int64_t d1 = ((b - a) % M + M) % M;
    std::int64_t d2 = ((a - b) % M + M) % M;
    return d1 < la || d2 < lb;
}

} // namespace

bool tripled_contains(const DyadicSector& r, const DyadicSector& q) {
    check_sector(r);
    check_sector(q);
    if (q.level < r.level)
        throw ValidationError("tripled_contains: q must not be coarser than r");
    std::int64_t M = std::int64_t{1} << (q.level - 1); // arcs per circle at q's level
    std::int64_t scale = std::int64_t{1} << (q.level - r.level);
    std::int64_t width3 = 3 * scale;
    if (width3 >= M) return true; // 3R wraps the whole circle
    std::int64_t s = (((r.index - 2) * scale) % M + M) % M;
    std::int64_t offset = (((q.index - 1) - s) % M + M) % M;
    return offset + 1 <= width3;
}

bool tripled_intersects(const DyadicSector& r, const DyadicSector& q) {
    check_sector(r);
    check_sector(q);
    int g = std::max(r.level, q.level);
    std::int64_t M = std::int64_t{1} << (g - 1);
    std::int64_t sq = std::int64_t{1} << (g - q.level);
    std::int64_t sr = std::int64_t{1} << (g - r.level);
    std::int64_t lb = 3 * sr;
    if (lb >= M) return true;
    std::int64_t a = (q.index - 1) * sq;
    std::int64_t b = (((r.index - 2) * sr) % M + M) % M;
    return intervals_intersect_mod(a, sq, b, lb, M);
}

int annulus_index(double u) {
    if (!(u > 0.0 && u <= 1.0))
        throw ValidationError("annulus_index: 1 - |z| must lie in (0, 1]");
    int e = std::ilogb(u);                    // 2^e <= u < 2^{e+1}
    bool exact = (u == std::ldexp(1.0, e));   // u = 2^e sits at a band's top edge
    return exact ? 1 - e : -e;
}

DyadicTree build_tree(const ZeroList& zeros, int max_level) {
    if (max_level < 1 || max_level > 40)
        throw ValidationError("build_tree: max_level must lie in [1, 40]");
    DyadicTree tree;
    tree.max_level_ = max_level;
    for (const auto& e : zeros.entries()) {
        double u = 1.0 - e.point.abs();
        int level = annulus_index(u);
        if (level > max_level) {
            tree.deep_.push_back(e);
            continue;
        }
        double t = std::arg(e.point.value());
        if (t < 0.0) t += kTwoPi;
        double x = t / kTwoPi; // normalized angle in [0, 1)
        std::int64_t arcs = std::int64_t{1} << (level - 1);
        auto j = static_cast<std::int64_t>(x * double(arcs)) + 1;
        j = std::clamp<std::int64_t>(j, 1, arcs);
        tree.counts_[{level, j}] += e.multiplicity;
        tree.total_assigned_ += e.multiplicity;
    }
    return tree;
}

int DyadicTree::count(const DyadicSector& q) const {
    auto it = counts_.find(q);
    return it == counts_.end() ? 0 : it->second;
}

int DyadicTree::deepest_occupied_level() const {
    int deepest = 0;
    for (const auto& [q, n] : counts_)
        if (n > 0) deepest = std::max(deepest, q.level);
    return deepest;
}

double sector_density(const DyadicTree& tree, const DyadicSector& q) {
    check_sector(q);
    if (q.level < 2) return 0.0; // the whole-circle sector carries no density
    double sum = 0.0;
    for (const auto& [r, n] : tree.counts()) {
        if (n <= 0 || r.level < 2 || r.level > q.level) continue;
        if (tripled_contains(r, q))
            sum += double(n) * std::ldexp(1.0, r.level - 1); // N(R)/l(R)
    }
    return sum;
}

namespace {

// Upper bound for F over q and all of its descendants: drop the length
// restriction and keep every stored sector whose tripled arc meets q's arc.
double density_potential(const DyadicTree& tree, const DyadicSector& q) {
    double sum = 0.0;
    for (const auto& [r, n] : tree.counts()) {
        if (n <= 0 || r.level < 2) continue;
        if (tripled_intersects(r, q))
            sum += double(n) * std::ldexp(1.0, r.level - 1);
    }
    return sum;
}

void collect_maximal(const DyadicTree& tree, const DyadicSector& q, double threshold,
                     int leaf_level, std::vector<DyadicSector>& out) {
    double f = sector_density(tree, q);
    if (f > threshold) {
        out.push_back(q);
        return;
    }
    if (q.level >= leaf_level) return; // F is constant below this level
    if (density_potential(tree, q) <= threshold) return;
    auto [left, right] = sector_children(q);
    collect_maximal(tree, left, threshold, leaf_level, out);
    collect_maximal(tree, right, threshold, leaf_level, out);
}

} // namespace

std::vector<MaximalFamily> maximal_families(const DyadicTree& tree, int N_max) {
    if (N_max < 1) throw ValidationError("maximal_families: N_max must be >= 1");
    int leaf_level = std::max(2, tree.deepest_occupied_level());
    std::vector<MaximalFamily> out;
    out.reserve(static_cast<size_t>(N_max));
    for (int N = 1; N <= N_max; ++N) {
        MaximalFamily fam;
        fam.N = N;
        double threshold = std::ldexp(1.0, N);
        collect_maximal(tree, {2, 1}, threshold, leaf_level, fam.sectors);
        collect_maximal(tree, {2, 2}, threshold, leaf_level, fam.sectors);
        for (const auto& q : fam.sectors) fam.total_length += sector_length(q);
        out.push_back(std::move(fam));
    }
    return out;
}

FamilySum maximal_family_sum(const DyadicTree& tree, double p, int N_max) {
    auto families = maximal_families(tree, N_max);
    FamilySum out;
    for (const auto& fam : families)
        out.value += std::pow(2.0, fam.N * p) * fam.total_length;
    out.tail_length = families.back().total_length;
    return out;
}

double dyadic_count_sum(const DyadicTree& tree, double p) {
    double sum = 0.0;
    for (const auto& [q, n] : tree.counts()) {
        if (n <= 0 || q.level < 2) continue;
        sum += std::pow(double(n), p) * std::pow(sector_length(q), 1.0 - p);
    }
    return sum;
}

EpsilonFamily epsilon_family(const DyadicTree& tree, const DyadicSector& q0, double eps) {
    check_sector(q0);
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("epsilon_family: eps must lie in (0,1)");
    int n0 = tree.count(q0);
    if (n0 <= 0) throw ValidationError("epsilon_family: N(Q0) must be positive");

    double d0 = double(n0) / sector_length(q0);
    EpsilonFamily out;
    for (const auto& [q, n] : tree.counts()) {
        if (n <= 0 || q.level <= q0.level) continue;
        std::int64_t anc = ((q.index - 1) >> (q.level - q0.level)) + 1;
        if (anc != q0.index) continue; // not a subsector of q0
        double d = double(n) / sector_length(q);
        if (d >= (1.0 - eps) * d0 && d <= (1.0 + eps) * d0) {
            out.sectors.push_back(q);
            out.total_length += sector_length(q);
        }
    }
    out.hypothesis_ratio = out.total_length / sector_length(q0);
    return out;
}

AnnulusProfile stolz_annulus_profile(const ZeroList& zeros, double p) {
    AnnulusProfile out;
    for (const auto& e : zeros.entries()) {
        int j = annulus_index(1.0 - e.point.abs());
        if (static_cast<size_t>(j) > out.counts.size()) out.counts.resize(static_cast<size_t>(j), 0);
        out.counts[static_cast<size_t>(j) - 1] += e.multiplicity;
    }
    for (size_t j = 1; j <= out.counts.size(); ++j) {
        if (out.counts[j - 1] == 0) continue;
        out.weighted_sum += std::pow(2.0, -double(j) * (1.0 - p)) *
                            std::pow(double(out.counts[j - 1]), p);
    }
    return out;
}

double separation_constant(const ZeroList& zeros) {
    if (zeros.degree() < 2)
        throw ValidationError("separation_constant: need at least two zeros");
    for (const auto& e : zeros.entries())
        if (e.multiplicity >= 2) return 0.0;

    const auto& es = zeros.entries();
    double best = 1.0;
    for (size_t i = 0; i < es.size(); ++i) {
        cplx zi = es[i].point.value();
        for (size_t j = i + 1; j < es.size(); ++j) {
            cplx zj = es[j].point.value();
            // rho >= |z - w|/2, so skip pairs that cannot improve the minimum
            if (0.5 * std::abs(zi - zj) >= best) continue;
            best = std::min(best, pseudo_distance(zi, zj));
        }
    }
    return best;
}

} // namespace blaschke
