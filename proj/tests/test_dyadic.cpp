#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "blaschke/dyadic.hpp"
#include "oracles.hpp"

using namespace blaschke;
using testkit::Rng;

// ---------------------------------------------------------------------------
// Brute-force reimplementation used as the oracle: enumerate every sector up
// to a level cap, count zeros by explicit band/arc membership, and take the
// definitions literally. Shares no code with the library.
// ---------------------------------------------------------------------------
namespace brute {

struct Key {
    int level;
    long long index;
    bool operator<(const Key& o) const {
        return level != o.level ? level < o.level : index < o.index;
    }
    bool operator==(const Key& o) const = default;
};

double length(const Key& q) { return std::pow(2.0, 1 - q.level); }

std::map<Key, int> counts(const ZeroList& zeros, int max_level) {
    std::map<Key, int> out;
    for (const auto& e : zeros.entries()) {
        double u = 1.0 - e.point.abs();
        int level = 1;
        while (level < 60 && !(u > std::pow(2.0, -level) && u <= std::pow(2.0, 1 - level)))
            ++level;
        if (level > max_level) continue;
        double t = std::arg(e.point.value());
        if (t < 0.0) t += kTwoPi;
        long long arcs = 1LL << (level - 1);
        long long j = std::min<long long>((long long)(t / kTwoPi * double(arcs)) + 1, arcs);
        out[{level, j}] += e.multiplicity;
    }
    return out;
}

// Q inside tripled R, testing both unwrapped placements of Q's arc.
bool inside_3r(const Key& r, const Key& q) {
    long long g = std::max(r.level, q.level);
    long long M = 1LL << (g - 1);
    long long sq = 1LL << (g - q.level);
    long long sr = 1LL << (g - r.level);
    if (3 * sr >= M) return true;
    long long qa = (q.index - 1) * sq, qb = q.index * sq;
    long long ra = (r.index - 2) * sr, rb = (r.index + 1) * sr;
    for (long long shift : {-M, 0LL, M}) {
        if (qa + shift >= ra && qb + shift <= rb) return true;
    }
    return false;
}

double density(const std::map<Key, int>& cnt, const Key& q) {
    if (q.level < 2) return 0.0;
    double f = 0.0;
    for (const auto& [r, n] : cnt) {
        if (n <= 0 || r.level < 2 || r.level > q.level) continue;
        if (inside_3r(r, q)) f += double(n) / length(r);
    }
    return f;
}

struct Family {
    std::vector<Key> sectors;
    double total = 0.0;
};

Family family(const std::map<Key, int>& cnt, int N, int max_level) {
    Family fam;
    double thr = std::pow(2.0, N);
    for (int level = 2; level <= max_level; ++level) {
        long long arcs = 1LL << (level - 1);
        for (long long j = 1; j <= arcs; ++j) {
            Key q{level, j};
            if (density(cnt, q) <= thr) continue;
            Key parent{level - 1, (j + 1) / 2};
            if (level > 2 && density(cnt, parent) > thr) continue; // not maximal
            fam.sectors.push_back(q);
            fam.total += length(q);
        }
    }
    return fam;
}

} // namespace brute

namespace {

ZeroList zeros_at_top_center(int level, long long index, int count) {
    // distinct points spread across the top part of one sector
    ZeroList out;
    double r = 1.0 - 3.0 * std::pow(2.0, -level - 1);
    double arc_lo = kTwoPi * double(index - 1) * std::pow(2.0, 1 - level);
    double arc_len = kTwoPi * std::pow(2.0, 1 - level);
    for (int i = 0; i < count; ++i)
        out.add(DiskPoint::from(std::polar(r, arc_lo + arc_len * (i + 0.5) / count)));
    return out;
}

ZeroList random_bounded_level(Rng& rng, int n, int max_level) {
    // moduli capped so every zero lands at level <= max_level
    double r_cap = 1.0 - std::pow(2.0, -max_level);
    return testkit::random_zero_list(rng, n, 0.0, r_cap * 0.999);
}

} // namespace

TEST_CASE("annulus index is exact on power-of-two edges") {
    CHECK(annulus_index(1.0) == 1);        // |z| = 0
    CHECK(annulus_index(0.5) == 2);        // |z| = 1/2 sits in [1/2, 3/4)
    CHECK(annulus_index(0.25) == 3);       // |z| = 3/4
    CHECK(annulus_index(0.3) == 2);
    CHECK(annulus_index(0.126) == 3);
    CHECK(annulus_index(0.125) == 4);
    CHECK_THROWS_AS(annulus_index(0.0), ValidationError);
}

TEST_CASE("build_tree assigns every zero exactly once") {
    Rng rng(89);
    auto zl = random_bounded_level(rng, 1000, 20);
    auto tree = build_tree(zl, 40);
    CHECK(tree.total_assigned() == 1000);
    CHECK(tree.deep_zeros().empty());
    int sum = 0;
    for (const auto& [q, n] : tree.counts()) sum += n;
    CHECK(sum == 1000);

    // one zero per top-part center fills a whole level with count 1
    int level = 5;
    ZeroList centers;
    for (long long j = 1; j <= (1LL << (level - 1)); ++j)
        centers = centers.concatenated(zeros_at_top_center(level, j, 1));
    auto t2 = build_tree(centers, 10);
    for (const auto& [q, n] : t2.counts()) {
        CHECK(q.level == level);
        CHECK(n == 1);
    }
    CHECK(t2.counts().size() == size_t(1) << (level - 1));
}

TEST_CASE("zeros deeper than the level cap are reported, not dropped") {
    ZeroList zl;
    zl.add({1.0 - std::pow(2.0, -45), 0.0});
    zl.add({0.5, 0.0});
    auto tree = build_tree(zl, 40);
    CHECK(tree.total_assigned() == 1);
    REQUIRE(tree.deep_zeros().size() == 1);
    CHECK(tree.deep_zeros()[0].point.re == 1.0 - std::pow(2.0, -45));
}

TEST_CASE("tripled-arc containment handles wraparound") {
    DyadicSector r{4, 1};
    CHECK(tripled_contains(r, {4, 1}));
    CHECK(tripled_contains(r, {4, 2}));
    CHECK(tripled_contains(r, {4, 8})); // wraps below theta = 0
    CHECK_FALSE(tripled_contains(r, {4, 3}));
    CHECK_FALSE(tripled_contains(r, {4, 7}));
    CHECK(tripled_contains({2, 1}, {5, 13})); // 3R covers the whole circle
    CHECK_THROWS_AS(tripled_contains({5, 1}, {4, 1}), ValidationError);
}

TEST_CASE("sector density: one zero at level 4") {
    auto zl = zeros_at_top_center(4, 1, 1);
    auto tree = build_tree(zl, 12);
    REQUIRE(tree.counts().size() == 1);
    DyadicSector q0{4, 1};
    CHECK(tree.count(q0) == 1);

    CHECK(sector_density(tree, q0) == 8.0); // N/l = 1/(1/8), and Q0 in 3Q0
    CHECK(sector_density(tree, sector_parent(q0)) == 0.0);
    CHECK(sector_density(tree, sector_children(q0).first) == 8.0);
    CHECK(sector_density(tree, {4, 2}) == 8.0);
    CHECK(sector_density(tree, {4, 8}) == 8.0);
    CHECK(sector_density(tree, {4, 4}) == 0.0);
}

TEST_CASE("maximal families: one zero at level 4") {
    auto tree = build_tree(zeros_at_top_center(4, 1, 1), 12);
    auto fams = maximal_families(tree, 6);
    // F = 8 on the three level-4 sectors inside 3Q0: families live at N = 1, 2
    for (const auto& fam : fams) {
        if (fam.N <= 2) {
            CHECK(fam.sectors.size() == 3);
            CHECK(fam.total_length == 3.0 / 8.0);
        } else {
            CHECK(fam.sectors.empty());
        }
    }
    double p = 0.75;
    auto fs = maximal_family_sum(tree, p, 6);
    CHECK(fs.value ==
          doctest::Approx((std::pow(2.0, p) + std::pow(4.0, p)) * 0.375).epsilon(1e-14));
    CHECK(fs.tail_length == 0.0);

    auto empty_tree = build_tree(ZeroList{}, 12);
    CHECK(maximal_family_sum(empty_tree, p, 6).value == 0.0);
    for (const auto& fam : maximal_families(empty_tree, 4)) CHECK(fam.sectors.empty());
}

TEST_CASE("oracle equivalence on random instances") {
    Rng rng(97);
    for (int trial = 0; trial < 10; ++trial) {
        int max_level = 8;
        auto zl = random_bounded_level(rng, rng.integer(5, 60), max_level);
        auto tree = build_tree(zl, 12);
        auto cnt = brute::counts(zl, max_level);

        // counts agree sector by sector
        int assigned = 0;
        for (const auto& [k, n] : cnt) {
            CHECK(tree.count({k.level, k.index}) == n);
            assigned += n;
        }
        CHECK(assigned == tree.total_assigned());

        // densities agree exactly on every sector up to the cap
        for (int level = 2; level <= max_level; ++level) {
            long long arcs = 1LL << (level - 1);
            for (long long j = 1; j <= arcs; ++j) {
                double mine = sector_density(tree, {level, j});
                double theirs = brute::density(cnt, {level, j});
                CHECK(mine == theirs);
            }
        }

        // maximal families agree exactly (sets and lengths)
        auto fams = maximal_families(tree, 10);
        for (const auto& fam : fams) {
            auto oracle = brute::family(cnt, fam.N, max_level);
            REQUIRE(fam.sectors.size() == oracle.sectors.size());
            auto sorted = fam.sectors;
            std::sort(sorted.begin(), sorted.end());
            for (size_t i = 0; i < sorted.size(); ++i) {
                CHECK(sorted[i].level == oracle.sectors[i].level);
                CHECK(sorted[i].index == oracle.sectors[i].index);
            }
            CHECK(fam.total_length == oracle.total);
        }

        // family invariants: self passes, parent fails, nesting across N
        for (const auto& fam : fams) {
            double thr = std::pow(2.0, fam.N);
            for (const auto& q : fam.sectors) {
                CHECK(sector_density(tree, q) > thr);
                if (q.level > 2) CHECK(sector_density(tree, sector_parent(q)) <= thr);
            }
        }
        for (size_t i = 1; i < fams.size(); ++i) {
            for (const auto& q : fams[i].sectors) {
                bool covered = false;
                for (const auto& r : fams[i - 1].sectors) {
                    if (r.level <= q.level &&
                        (q.index - 1) >> (q.level - r.level) == r.index - 1)
                        covered = true;
                }
                CHECK(covered);
            }
            CHECK(fams[i].total_length <= fams[i - 1].total_length);
        }
    }
}

TEST_CASE("doubling multiplicities shifts families by one level") {
    Rng rng(101);
    auto zl = random_bounded_level(rng, 20, 6);
    ZeroList doubled;
    for (const auto& e : zl.entries()) doubled.add(e.point, 2 * e.multiplicity);
    auto tree = build_tree(zl, 10);
    auto tree2 = build_tree(doubled, 10);
    double p = 0.75;
    double s1 = maximal_family_sum(tree, p, 20).value;
    double s2 = maximal_family_sum(tree2, p, 20).value;
    // E'_N = E_{N-1}, so the doubled sum is 2^p (original + the N=0 term)
    CHECK(s2 >= std::pow(2.0, p) * s1 * (1.0 - 1e-12));
    CHECK(s2 <= std::pow(2.0, p) * (s1 + 2.0)); // l(E_0) <= whole circle's worth
}

TEST_CASE("dyadic count sum") {
    double p = 0.75;
    auto tree4 = build_tree(zeros_at_top_center(4, 1, 1), 12);
    CHECK(dyadic_count_sum(tree4, p) == doctest::Approx(std::pow(0.125, 0.25)).epsilon(1e-14));

    auto tree_n = build_tree(zeros_at_top_center(5, 3, 6), 12);
    CHECK(dyadic_count_sum(tree_n, p) ==
          doctest::Approx(std::pow(6.0, p) * std::pow(0.0625, 1.0 - p)).epsilon(1e-14));

    // separated-like radial chain: each sector holds one zero, so the sum is
    // comparable to the gap sum with the exact factor 2^{1-p}
    ZeroList chain;
    for (int j = 1; j <= 10; ++j) chain.add({1.0 - std::ldexp(1.0, -j), 0.0});
    auto tree_c = build_tree(chain, 20);
    double ratio = dyadic_count_sum(tree_c, p) / gap_power_sum(chain, 1.0 - p);
    CHECK(ratio == doctest::Approx(std::pow(2.0, 1.0 - p)).epsilon(1e-12));
}

TEST_CASE("epsilon family") {
    // lone occupant: no proper subsector qualifies
    auto lone = build_tree(zeros_at_top_center(3, 1, 1), 12);
    auto fam0 = epsilon_family(lone, {3, 1}, 0.5);
    CHECK(fam0.sectors.empty());
    CHECK(fam0.hypothesis_ratio == 0.0);

    // child with the same count has twice the density: outside the 1/2-band
    auto two = build_tree(
        zeros_at_top_center(3, 1, 1).concatenated(zeros_at_top_center(4, 1, 1)), 12);
    CHECK(epsilon_family(two, {3, 1}, 0.5).sectors.empty());

    // halving cascade keeps the density constant: every member qualifies
    ZeroList cascade = zeros_at_top_center(3, 1, 16)
                           .concatenated(zeros_at_top_center(4, 1, 8))
                           .concatenated(zeros_at_top_center(5, 1, 4))
                           .concatenated(zeros_at_top_center(6, 1, 2));
    auto tree = build_tree(cascade, 12);
    auto fam = epsilon_family(tree, {3, 1}, 0.5);
    CHECK(fam.sectors.size() == 3);
    CHECK(fam.total_length == doctest::Approx(7.0 / 32.0).epsilon(1e-14));
    CHECK(fam.hypothesis_ratio == doctest::Approx(7.0 / 8.0).epsilon(1e-14));

    // extend the cascade one level: the ratio keeps growing with depth
    ZeroList longer = cascade.concatenated(zeros_at_top_center(7, 1, 1));
    auto fam2 = epsilon_family(build_tree(longer, 12), {3, 1}, 0.5);
    CHECK(fam2.hypothesis_ratio == doctest::Approx(15.0 / 16.0).epsilon(1e-14));

    CHECK_THROWS_AS(epsilon_family(lone, {2, 1}, 0.5), ValidationError);
    CHECK_THROWS_AS(epsilon_family(lone, {3, 1}, 1.5), ValidationError);
}

TEST_CASE("stolz annulus profile") {
    double p = 0.75;
    ZeroList chain;
    int J = 9;
    for (int j = 1; j <= J; ++j) chain.add({1.0 - std::ldexp(1.0, -j), 0.0});
    auto prof = stolz_annulus_profile(chain, p);
    REQUIRE(prof.counts.size() == size_t(J));
    for (auto c : prof.counts) CHECK(c == 1);
    double expect = 0.0;
    for (int j = 1; j <= J; ++j) expect += std::pow(2.0, -j * (1.0 - p));
    CHECK(prof.weighted_sum == doctest::Approx(expect).epsilon(1e-14));

    CHECK(stolz_annulus_profile(ZeroList{}, p).weighted_sum == 0.0);
    CHECK(stolz_annulus_profile(ZeroList{}, p).counts.empty());
}

TEST_CASE("annulus sum approaches the geometric limit") {
    double p = 0.75;
    int J = 60;
    ZeroList chain;
    for (int j = 1; j <= J; ++j) chain.add({1.0 - std::ldexp(1.0, -j), 0.0});
    double partial = stolz_annulus_profile(chain, p).weighted_sum;
    double limit = 1.0 / (std::pow(2.0, 0.25) - 1.0);
    double tail = std::pow(2.0, -(J + 1) * 0.25) / (1.0 - std::pow(2.0, -0.25));
    CHECK(std::abs(partial - limit) <= tail * (1.0 + 1e-9));
    CHECK(limit == doctest::Approx(5.285).epsilon(1e-3));
}

TEST_CASE("separation constant") {
    ZeroList ab;
    ab.add({0.0, 0.0});
    ab.add({0.5, 0.0});
    CHECK(separation_constant(ab) == doctest::Approx(0.5));

    ZeroList mult;
    mult.add({0.3, 0.1}, 2);
    CHECK(separation_constant(mult) == 0.0);

    ZeroList pair;
    pair.add({0.5, 0.0});
    pair.add({0.75, 0.0});
    CHECK(separation_constant(pair) == doctest::Approx(0.4));

    // longer radial chain against a direct pairwise oracle
    ZeroList chain;
    for (int j = 1; j <= 8; ++j) chain.add({1.0 - std::ldexp(1.0, -j), 0.0});
    double oracle = 1.0;
    auto pts = chain.expanded();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            oracle = std::min(oracle,
                              std::abs(pts[i] - pts[j]) /
                                  std::abs(1.0 - std::conj(pts[i]) * pts[j]));
    CHECK(separation_constant(chain) == doctest::Approx(oracle).epsilon(1e-14));

    ZeroList one;
    one.add({0.5, 0.0});
    CHECK_THROWS_AS(separation_constant(one), ValidationError);
}
