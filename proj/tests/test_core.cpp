#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "blaschke/core.hpp"
#include "oracles.hpp"

using namespace blaschke;
using testkit::Rng;

namespace {

BlaschkeProduct single(double re, double im = 0.0, int mult = 1) {
    ZeroList zl;
    zl.add({re, im}, mult);
    return make_product(std::move(zl));
}

} // namespace

TEST_CASE("construction follows the |z_n|/z_n convention") {
    auto B = single(0.0); // B(z) = -z
    CHECK(evaluate(B, {0.5, 0.0}) == cplx{-0.5, 0.0});
    CHECK(evaluate(B, {0.0, 0.25}) == cplx{0.0, -0.25});

    auto Bn = single(0.0, 0.0, 5); // (-z)^5
    for (double t : {0.0, 1.0, 2.5}) {
        CHECK(std::abs(std::abs(evaluate(Bn, std::polar(1.0, t))) - 1.0) < 1e-12);
    }

    auto Bh = single(0.5);
    CHECK(std::abs(evaluate(Bh, {0.5, 0.0})) == 0.0);
    CHECK(std::abs(evaluate(Bh, {0.0, 0.0})) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(make_product(ZeroList{}), ValidationError);
    ZeroList zl;
    CHECK_THROWS_AS(zl.add({1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(zl.add({0.9, 0.5}), ValidationError);
    CHECK_THROWS_AS(zl.add({0.1, 0.1}, 0), ValidationError);

    // degree cap
    ZeroList big;
    CHECK_THROWS_AS(big.add({0.0, 0.0}, kDefaultMaxDegree), ValidationError);

    // explicit constant product stays available
    auto one = BlaschkeProduct::one();
    CHECK(evaluate(one, {0.3, 0.2}) == cplx{1.0, 0.0});
    CHECK(derivative(one, {0.3, 0.2}) == cplx{0.0, 0.0});

    // exact duplicates merge into multiplicity
    ZeroList dup;
    dup.add({0.25, 0.0});
    dup.add({0.25, 0.0});
    CHECK(dup.entries().size() == 1);
    CHECK(dup.degree() == 2);

    CHECK_THROWS_AS(make_product(dup, cplx{0.5, 0.5}), ValidationError);
}

TEST_CASE("evaluate is inner") {
    CHECK(evaluate(single(0.0), {0.5, 0.0}) == cplx{-0.5, 0.0});
    auto B = single(0.5);
    CHECK(std::abs(std::abs(evaluate(B, {1.0, 0.0})) - 1.0) < 1e-12);

    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto zl = testkit::random_zero_list(rng, rng.integer(1, 8), 0.0, 0.95);
        auto P = make_product(zl);
        cplx z = std::polar(rng.range(0.0, 0.999), rng.range(0.0, kTwoPi));
        CHECK(std::abs(evaluate(P, z)) <= 1.0 + 1e-12);
        for (const auto& e : zl.entries())
            CHECK(std::abs(evaluate(P, e.point.value())) == 0.0);
    }
}

TEST_CASE("derivative closed forms") {
    auto B1 = single(0.0); // B' == -1 everywhere
    CHECK(derivative(B1, {0.0, 0.0}) == cplx{-1.0, 0.0});
    CHECK(std::abs(derivative(B1, {0.3, -0.4}) - cplx{-1.0, 0.0}) < 1e-15);

    // one factor at a = 1/2: B'(z) = (|a|/a)(|a|^2 - 1)/(1 - conj(a) z)^2
    auto Bh = single(0.5);
    CHECK(std::abs(derivative(Bh, {0.0, 0.0}) - cplx{-0.75, 0.0}) < 1e-15);

    // (-z)^2 = z^2, derivative 2z
    auto B2 = single(0.0, 0.0, 2);
    CHECK(std::abs(derivative(B2, {0.25, 0.0}) - cplx{0.5, 0.0}) < 1e-15);
    CHECK(derivative(B2, {0.0, 0.0}) == cplx{0.0, 0.0}); // multiple zero

    // simple zero of a two-factor product, product-rule limit
    ZeroList zl;
    zl.add({0.0, 0.0});
    zl.add({0.5, 0.0});
    auto B = make_product(zl);
    CHECK(std::abs(derivative(B, {0.0, 0.0}) - cplx{-0.5, 0.0}) < 1e-15);
}

TEST_CASE("derivative agrees with the logarithmic-derivative formula off zeros") {
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        auto zl = testkit::random_zero_list(rng, rng.integer(1, 10), 0.0, 0.9);
        auto B = make_product(zl);
        cplx z = std::polar(rng.range(0.0, 0.8), rng.range(0.0, kTwoPi));
        bool near = false;
        for (const auto& e : zl.entries())
            if (std::abs(e.point.value() - z) < 1e-3) near = true;
        if (near) continue;
        cplx sum = 0.0;
        for (const auto& e : zl.entries()) {
            cplx w = e.point.value();
            sum -= double(e.multiplicity) * (1.0 - std::norm(w)) /
                   ((w - z) * (1.0 - std::conj(w) * z));
        }
        cplx expected = evaluate(B, z) * sum;
        CHECK(std::abs(derivative(B, z) - expected) <=
              1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("boundary derivative is the Poisson-kernel sum") {
    CHECK(boundary_derivative(single(0.0), BoundaryPoint(0.3)) == doctest::Approx(1.0));
    CHECK(boundary_derivative(single(0.0), BoundaryPoint(5.9)) == doctest::Approx(1.0));
    CHECK(boundary_derivative(single(0.5), BoundaryPoint(0.0)) == doctest::Approx(3.0));

    ZeroList zl;
    zl.add({0.0, 0.0});
    zl.add({0.5, 0.0});
    CHECK(boundary_derivative(make_product(zl), BoundaryPoint(kPi)) ==
          doctest::Approx(4.0 / 3.0));
}

TEST_CASE("boundary derivative is additive over zero lists") {
    Rng rng(13);
    auto a = testkit::random_zero_list(rng, 6, 0.0, 0.9);
    auto b = testkit::random_zero_list(rng, 5, 0.0, 0.9);
    auto both = a.concatenated(b);
    for (int i = 0; i < 16; ++i) {
        BoundaryPoint t(rng.range(0.0, kTwoPi));
        double lhs = boundary_derivative(make_product(both), t);
        double rhs = boundary_derivative(make_product(a), t) +
                     boundary_derivative(make_product(b), t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("derivative bound dominates the derivative") {
    CHECK(derivative_bound(single(0.0), {0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(derivative_bound(single(0.5), {0.0, 0.0}) == doctest::Approx(0.75));

    // two-zero instance at z = 0.3i, bound vs direct quotient-rule derivative
    ZeroList zl;
    zl.add({0.0, 0.0});
    zl.add({0.5, 0.0});
    auto B = make_product(zl);
    cplx z{0.0, 0.3};
    // oracle: B(z) = -z (1/2 - z)/(1 - z/2), differentiate the quotient by hand
    auto num = [](cplx w) { return -w * (0.5 - w); };
    auto den = [](cplx w) { return 1.0 - 0.5 * w; };
    cplx dnum = -(0.5 - z) + z; // d/dz [-w(1/2 - w)]
    cplx dden{-0.5, 0.0};
    cplx oracle = (dnum * den(z) - num(z) * dden) / (den(z) * den(z));
    CHECK(std::abs(derivative(B, z) - oracle) < 1e-14);
    CHECK(std::abs(derivative(B, z)) <= derivative_bound(B, z));

    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        auto list = testkit::random_zero_list(rng, rng.integer(1, 12), 0.0, 0.97);
        auto P = make_product(list);
        cplx w = std::polar(rng.range(0.0, 0.995), rng.range(0.0, kTwoPi));
        CHECK(std::abs(derivative(P, w)) <= derivative_bound(P, w) * (1.0 + 1e-12));
    }
}

TEST_CASE("pseudo-hyperbolic distance") {
    CHECK(pseudo_distance(cplx{0.0, 0.0}, cplx{0.3, 0.4}) == doctest::Approx(0.5));
    CHECK(pseudo_distance(cplx{0.42, -0.13}, cplx{0.42, -0.13}) == 0.0);
    CHECK(pseudo_distance(cplx{0.5, 0.0}, cplx{-0.5, 0.0}) == doctest::Approx(0.8));

    Rng rng(19);
    for (int i = 0; i < 30; ++i) {
        cplx z = std::polar(rng.range(0.0, 0.99), rng.range(0.0, kTwoPi));
        cplx w = std::polar(rng.range(0.0, 0.99), rng.range(0.0, kTwoPi));
        CHECK(pseudo_distance(z, w) == doctest::Approx(pseudo_distance(w, z)).epsilon(1e-13));
        CHECK(pseudo_distance(z, w) < 1.0);
    }
}

TEST_CASE("mobius shift involution and isometry") {
    DiskPoint a{0.3, -0.2};
    CHECK(std::abs(mobius_shift(a, {0.0, 0.0}) - a.value()) < 1e-16);
    CHECK(std::abs(mobius_shift(a, a.value())) < 1e-16);
    CHECK(mobius_shift({0.0, 0.0}, {0.4, 0.1}) == cplx{-0.4, -0.1});

    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        DiskPoint m{rng.range(-0.7, 0.7), rng.range(-0.7, 0.7)};
        cplx z = std::polar(rng.range(0.0, 0.98), rng.range(0.0, kTwoPi));
        cplx w = std::polar(rng.range(0.0, 0.98), rng.range(0.0, kTwoPi));
        CHECK(std::abs(mobius_shift(m, mobius_shift(m, z)) - z) < 1e-12);
        CHECK(pseudo_distance(mobius_shift(m, z), mobius_shift(m, w)) ==
              doctest::Approx(pseudo_distance(z, w)).epsilon(1e-12));
    }
}

TEST_CASE("Schwarz-Pick factor bound") {
    Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        auto zl = testkit::random_zero_list(rng, rng.integer(1, 8), 0.0, 0.95);
        auto B = make_product(zl);
        cplx z = std::polar(rng.range(0.0, 0.99), rng.range(0.0, kTwoPi));
        double bz = std::abs(evaluate(B, z));
        for (const auto& e : zl.entries())
            CHECK(bz <= pseudo_distance(z, e.point.value()) + 1e-14);
    }
}

TEST_CASE("frostman shift: explicit preimages") {
    // (-z)^2 = z^2, a = 1/4 -> +-1/2
    auto B2 = single(0.0, 0.0, 2);
    auto S = frostman_shift(B2, {0.25, 0.0});
    CHECK(S.degree() == 2);
    double p = 0.75;
    CHECK(gap_power_sum(S.zeros(), 1.0 - p) ==
          doctest::Approx(2.0 * std::pow(0.5, 1.0 - p)).epsilon(1e-9));
    for (const auto& e : S.zeros().entries())
        CHECK(std::abs(std::abs(e.point.value()) - 0.5) < 1e-10);

    // B = -z: single preimage -a, and tau_a(B(-a)) = 0
    auto B1 = single(0.0);
    DiskPoint a{0.3, 0.45};
    auto S1 = frostman_shift(B1, a);
    CHECK(S1.degree() == 1);
    CHECK(std::abs(S1.zeros().entries()[0].point.value() - cplx{-0.3, -0.45}) < 1e-12);
    CHECK(std::abs(mobius_shift(a, evaluate(B1, cplx{-0.3, -0.45}))) < 1e-12);

    // n-th roots: (-z)^3 at a = -r^3 has three preimages of modulus r
    auto B3 = single(0.0, 0.0, 3);
    double r = 0.6;
    auto S3 = frostman_shift(B3, {-r * r * r, 0.0});
    CHECK(S3.degree() == 3);
    for (const auto& e : S3.zeros().entries())
        CHECK(std::abs(e.point.abs() - r) < 1e-10);

    // a = 0 recovers the zero set
    auto Bh = single(0.5);
    auto S0 = frostman_shift(Bh, {0.0, 0.0});
    REQUIRE(S0.degree() == 1);
    CHECK(std::abs(S0.zeros().entries()[0].point.value() - cplx{0.5, 0.0}) < 1e-12);

    CHECK_THROWS_AS(frostman_shift(BlaschkeProduct::one(), {0.1, 0.0}), ValidationError);
}

TEST_CASE("frostman shift: random products have clean residuals") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto zl = testkit::random_zero_list(rng, rng.integer(2, 32), 0.0, 0.95);
        auto B = make_product(zl);
        DiskPoint a{rng.range(-0.6, 0.6), rng.range(-0.6, 0.6)};
        auto S = frostman_shift(B, a);
        CHECK(S.degree() == B.degree());
        for (const auto& e : S.zeros().entries()) {
            CHECK(std::abs(evaluate(B, e.point.value()) - a.value()) < 1e-10);
            CHECK(std::abs(evaluate(S, e.point.value())) == 0.0);
        }
    }
}

TEST_CASE("radial limits of |B'| converge to the boundary derivative") {
    Rng rng(37);
    double r = 1.0 - 1e-6;
    for (int trial = 0; trial < 8; ++trial) {
        auto zl = testkit::random_zero_list(rng, rng.integer(1, 32), 0.0, 0.99);
        auto B = make_product(zl);
        int tested = 0;
        while (tested < 12) {
            double t = rng.range(0.0, kTwoPi);
            bool shadowed = false;
            for (const auto& e : zl.entries()) {
                double d = std::abs(std::remainder(t - std::arg(e.point.value()), kTwoPi));
                if (d < 0.05) shadowed = true;
            }
            if (shadowed) continue;
            ++tested;
            double lim = std::abs(derivative(B, std::polar(r, t)));
            double bd = boundary_derivative(B, BoundaryPoint(t));
            CHECK(std::abs(lim - bd) <= 0.005 * bd);
        }
    }
}
