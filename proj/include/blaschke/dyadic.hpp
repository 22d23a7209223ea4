#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "blaschke/core.hpp"

namespace blaschke {

// Dyadic sector of the disk. Level n >= 1 splits the circle into 2^{n-1}
// arcs of normalized length 2^{1-n}; the arc of index j (1-based) covers
// [(j-1) 2^{1-n}, j 2^{1-n}) of the normalized circle. The sector's top part
// is the radial band 1 - 2^{1-n} <= r < 1 - 2^{-n} over that arc. The level-1
// sector is the whole disk's core; it holds zeros with |z| < 1/2 but is
// excluded from every density sum.
struct DyadicSector {
    int level = 1;
    std::int64_t index = 1;

    auto operator<=>(const DyadicSector&) const = default;
};

double sector_length(const DyadicSector& q); // 2^{1-level}
DyadicSector sector_parent(const DyadicSector& q);
std::pair<DyadicSector, DyadicSector> sector_children(const DyadicSector& q);

// Exact integer-arithmetic test: is the base arc of q contained in the
// tripled base arc of r (wraparound included)? Requires q no coarser than r.
bool tripled_contains(const DyadicSector& r, const DyadicSector& q);

// Do the arcs of q and 3r intersect at all? Valid at any level combination.
bool tripled_intersects(const DyadicSector& r, const DyadicSector& q);

// Sparse sector tree: zero counts N(Q) over top parts, multiplicity included.
class DyadicTree {
public:
    int max_level() const { return max_level_; }
    const std::map<DyadicSector, int>& counts() const { return counts_; }
    int count(const DyadicSector& q) const;
    int total_assigned() const { return total_assigned_; }

    // Zeros deeper than max_level, reported rather than dropped.
    const std::vector<ZeroEntry>& deep_zeros() const { return deep_; }
    int deepest_occupied_level() const;

    friend DyadicTree build_tree(const ZeroList& zeros, int max_level);

private:
    int max_level_ = 0;
    std::map<DyadicSector, int> counts_;
    std::vector<ZeroEntry> deep_;
    int total_assigned_ = 0;
};

// Assigns each zero to the unique top part containing it.
DyadicTree build_tree(const ZeroList& zeros, int max_level);

// Dyadic annulus index j >= 1 with 2^{-j} < 1 - |z| <= 2^{-j+1}; exact on
// representable powers of two.
int annulus_index(double one_minus_mod);

// F(Q) = sum of N(R)/l(R) over stored R with l(R) >= l(Q) and Q inside 3R.
// Monotone nondecreasing from parent to child.
double sector_density(const DyadicTree& tree, const DyadicSector& q);

struct MaximalFamily {
    int N = 0;
    std::vector<DyadicSector> sectors;
    double total_length = 0.0;
};

// For each N = 1..N_max, the maximal sectors with F(Q) > 2^N (parent fails,
// self passes; level-2 sectors have no parent among proper sectors).
std::vector<MaximalFamily> maximal_families(const DyadicTree& tree, int N_max);

struct FamilySum {
    double value = 0.0;       // sum over N of 2^{Np} l(E_N)
    double tail_length = 0.0; // l(E_{N_max}); nonzero means the truncation bites
};

FamilySum maximal_family_sum(const DyadicTree& tree, double p, int N_max);

// sum over occupied sectors of N(Q)^p l(Q)^{1-p}.
double dyadic_count_sum(const DyadicTree& tree, double p);

struct EpsilonFamily {
    std::vector<DyadicSector> sectors;
    double total_length = 0.0;
    double hypothesis_ratio = 0.0; // total_length / l(Q0)
};

// Proper subsectors of q0 whose count density N(Q)/l(Q) lies within the
// (1 +- eps) band around N(Q0)/l(Q0).
EpsilonFamily epsilon_family(const DyadicTree& tree, const DyadicSector& q0, double eps);

struct AnnulusProfile {
    std::vector<std::int64_t> counts; // counts[j-1] = N_j
    double weighted_sum = 0.0;        // sum 2^{-j(1-p)} N_j^p
};

// Per-annulus zero counts and their weighted sum, for products whose zeros
// sit in a Stolz angle (confinement is the caller's concern).
AnnulusProfile stolz_annulus_profile(const ZeroList& zeros, double p);

// Min pairwise pseudo-hyperbolic distance; 0 whenever a multiplicity exceeds 1.
double separation_constant(const ZeroList& zeros);

} // namespace blaschke
