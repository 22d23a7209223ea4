// Test-side helpers: instance generators and independent numeric oracles.
// Nothing here may call into the code paths it is used to check.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "blaschke/core.hpp"

namespace testkit {

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next_u64() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double range(double a, double b) { return a + (b - a) * uniform(); }
    int integer(int lo, int hi) { return lo + int(next_u64() % std::uint64_t(hi - lo + 1)); }
};

inline blaschke::ZeroList random_zero_list(Rng& rng, int count, double r_min,
                                           double r_max) {
    blaschke::ZeroList out;
    for (int i = 0; i < count; ++i) {
        double r = rng.range(r_min, r_max);
        double t = rng.range(0.0, blaschke::kTwoPi);
        out.add(blaschke::DiskPoint::from(std::polar(r, t)));
    }
    return out;
}

// Composite Simpson rule; n must be even.
template <class F>
double simpson(F&& f, double a, double b, int n) {
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

template <class F>
double midpoint(F&& f, double a, double b, int n) {
    double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

inline double beta_function(double x, double y) {
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0.0, my = 0.0;
    size_t n = xs.size();
    for (size_t i = 0; i < n; ++i) {
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = std::log(xs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ys[i]) - my);
    }
    return sxy / sxx;
}

} // namespace testkit
