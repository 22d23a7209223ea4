#include "blaschke/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blaschke {

std::uint64_t SplitMix64::mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double SplitMix64::uniform(std::uint64_t counter) const {
    return double(mix(seed ^ mix(counter)) >> 11) * 0x1.0p-53;
}

const char* family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::radial_separated: return "radial";
        case FamilyKind::stolz_confined: return "stolz";
        case FamilyKind::dyadic_pattern: return "dyadic";
        case FamilyKind::uniform_random: return "random";
        case FamilyKind::single_zero_scaling: return "single";
    }
    return "?";
}

FamilyKind family_kind_from_name(const std::string& name) {
    if (name == "radial") return FamilyKind::radial_separated;
    if (name == "stolz") return FamilyKind::stolz_confined;
    if (name == "dyadic") return FamilyKind::dyadic_pattern;
    if (name == "random") return FamilyKind::uniform_random;
    if (name == "single") return FamilyKind::single_zero_scaling;
    throw ValidationError("unknown family kind: " + name);
}

ZeroList generate(const FamilySpec& spec) {
    if (spec.rng != "splitmix64")
        throw ValidationError("generate: unknown rng algorithm " + spec.rng);
    ZeroList out;
    switch (spec.kind) {
        case FamilyKind::radial_separated: {
            if (spec.depth < 1) throw ValidationError("generate: depth must be >= 1");
            for (int j = 1; j <= spec.depth; ++j)
                out.add({1.0 - std::ldexp(1.0, -j), 0.0});
            break;
        }
        case FamilyKind::stolz_confined: {
            if (spec.depth < 1) throw ValidationError("generate: depth must be >= 1");
            if (!(spec.beta > 1.0)) throw ValidationError("generate: beta must be > 1");
            for (int j = 1; j <= spec.depth; ++j) {
                std::int64_t count = 1;
                if (!spec.level_counts.empty()) {
                    size_t idx = static_cast<size_t>(j - 1);
                    count = idx < spec.level_counts.size() ? spec.level_counts[idx] : 0;
                }
                if (count <= 0) continue;
                double gap = std::ldexp(1.0, -j);
                double r = 1.0 - gap;
                // widest angle still inside Gamma_beta(1) at this modulus
                double cos_max =
                    1.0 - (spec.beta * spec.beta - 1.0) * gap * gap / (2.0 * r);
                double theta_max = std::acos(std::clamp(cos_max, -1.0, 1.0));
                for (std::int64_t i = 0; i < count; ++i) {
                    double t = 0.9 * theta_max * (2.0 * (i + 0.5) / double(count) - 1.0);
                    out.add(DiskPoint::from(std::polar(r, t)));
                }
            }
            break;
        }
        case FamilyKind::dyadic_pattern: {
            if (spec.pattern_levels.empty())
                throw ValidationError("generate: dyadic pattern needs levels");
            if (spec.pattern_stride < 1 || spec.pattern_count < 1)
                throw ValidationError("generate: bad pattern stride/count");
            for (int level : spec.pattern_levels) {
                if (level < 1 || level > 40)
                    throw ValidationError("generate: pattern level out of range");
                std::int64_t arcs = std::int64_t{1} << (level - 1);
                double ell = std::ldexp(1.0, 1 - level);
                double r = 1.0 - 3.0 * std::ldexp(1.0, -level - 1); // top-part mid radius
                for (std::int64_t j = 1; j <= arcs; j += spec.pattern_stride) {
                    double theta = kTwoPi * (double(j) - 0.5) * ell;
                    out.add(DiskPoint::from(std::polar(r, theta)), spec.pattern_count);
                }
            }
            break;
        }
        case FamilyKind::uniform_random: {
            if (spec.n < 1) throw ValidationError("generate: n must be >= 1");
            if (!(spec.max_radius > 0.0 && spec.max_radius < 1.0))
                throw ValidationError("generate: max_radius must lie in (0,1)");
            SplitMix64 rng{spec.seed};
            for (int i = 0; i < spec.n; ++i) {
                double theta = kTwoPi * rng.uniform(2 * std::uint64_t(i));
                double r = spec.max_radius * std::sqrt(rng.uniform(2 * std::uint64_t(i) + 1));
                out.add(DiskPoint::from(std::polar(r, theta)));
            }
            break;
        }
        case FamilyKind::single_zero_scaling: {
            if (!(spec.delta > 0.0 && spec.delta < 1.0))
                throw ValidationError("generate: delta must lie in (0,1)");
            out.add({1.0 - spec.delta, 0.0});
            break;
        }
    }
    return out;
}

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

template <class F>
double guarded(F&& f, const char* label, std::vector<std::string>& errors) {
    try {
        return f();
    } catch (const std::exception& e) {
        errors.push_back(std::string(label) + ": " + e.what());
        return nan_value();
    }
}

BlaschkeProduct product_of(const ZeroList& zeros) {
    return zeros.empty() ? BlaschkeProduct::one() : make_product(zeros);
}

} // namespace

FunctionalReport functional_report(const ZeroList& zeros, double p, double alpha,
                                   double c, const LabConfig& cfg) {
    FunctionalReport rep;
    rep.p = p;
    rep.alpha = alpha;
    rep.c = c;
    rep.degree = zeros.degree();

    BlaschkeProduct B = product_of(zeros);

    rep.hp_norm_p = guarded(
        [&] { return std::pow(hp_norm(B, p, cfg.quad), p); }, "hp_norm", rep.errors);
    rep.cone_norm_p = guarded(
        [&] { return std::pow(cone_norm(B, alpha, p, cfg.quad), p); }, "cone_norm",
        rep.errors);
    rep.sublevel_Ic = guarded(
        [&] {
            Enclosure enc = sublevel_integral(B, c, p, cfg.quad);
            rep.sublevel_width = enc.width();
            return enc.midpoint();
        },
        "sublevel_integral", rep.errors);
    rep.besov_q1_sp =
        guarded([&] { return besov_norm(B, 1.0, p, cfg.quad); }, "besov_norm", rep.errors);
    rep.carleson_log = guarded(
        [&] { return carleson_integral(B, p, cfg.quad); }, "carleson_integral", rep.errors);
    rep.weak_hp = guarded(
        [&] { return weak_hp_quasinorm(B, p, cfg.quad); }, "weak_hp_quasinorm", rep.errors);

    guarded(
        [&] {
            DyadicTree tree = build_tree(zeros, cfg.tree_depth);
            if (!tree.deep_zeros().empty())
                rep.errors.push_back("dyadic: zeros deeper than tree depth " +
                                     std::to_string(cfg.tree_depth));
            rep.dyadic_count = dyadic_count_sum(tree, p);
            FamilySum fs = maximal_family_sum(tree, p, cfg.family_n_max);
            rep.family_sum = fs.value;
            rep.family_tail = fs.tail_length;
            return 0.0;
        },
        "dyadic", rep.errors);

    rep.annulus_sum = zeros.empty() ? 0.0 : stolz_annulus_profile(zeros, p).weighted_sum;
    rep.gap_sum = gap_power_sum(zeros, 1.0 - p);
    return rep;
}

std::vector<std::string> functional_names() {
    return {"hp_pow_p", "cone_pow_p", "sublevel", "carleson",
            "besov_q1", "weak_hp",    "dyadic_count", "gap_sum"};
}

double evaluate_functional(const std::string& name, const ZeroList& zeros, double p,
                           double alpha, double c, const LabConfig& cfg) {
    BlaschkeProduct B = product_of(zeros);
    if (name == "hp_pow_p") return std::pow(hp_norm(B, p, cfg.quad), p);
    if (name == "cone_pow_p") return std::pow(cone_norm(B, alpha, p, cfg.quad), p);
    if (name == "sublevel") return sublevel_integral(B, c, p, cfg.quad).midpoint();
    if (name == "carleson") return carleson_integral(B, p, cfg.quad);
    if (name == "besov_q1") return besov_norm(B, 1.0, p, cfg.quad);
    if (name == "weak_hp") return weak_hp_quasinorm(B, p, cfg.quad);
    if (name == "dyadic_count") return dyadic_count_sum(build_tree(zeros, cfg.tree_depth), p);
    if (name == "gap_sum") return gap_power_sum(zeros, 1.0 - p);
    throw ValidationError("evaluate_functional: unknown functional " + name);
}

double fit_loglog_slope(const std::vector<SweepPoint>& points) {
    double sx = 0.0, sy = 0.0;
    for (const auto& pt : points) {
        sx += std::log(pt.delta);
        sy += std::log(pt.value);
    }
    double n = double(points.size());
    double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& pt : points) {
        double dx = std::log(pt.delta) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(pt.value) - my);
    }
    if (sxx == 0.0) throw ValidationError("fit_loglog_slope: degenerate grid");
    return sxy / sxx;
}

SweepResult sweep_exponent(const FamilySpec& spec, const std::string& functional,
                           double p, double alpha, double c, const LabConfig& cfg) {
    if (spec.delta_grid.size() < 5)
        throw ValidationError("sweep_exponent: need >= 5 grid members");
    auto [lo, hi] = std::minmax_element(spec.delta_grid.begin(), spec.delta_grid.end());
    if (!(*lo > 0.0) || *hi / *lo < 100.0)
        throw ValidationError("sweep_exponent: grid must span >= 2 decades");

    SweepResult res;
    res.functional = functional;
    res.p = p;
    res.alpha = alpha;
    res.c = c;
    for (double d : spec.delta_grid) {
        FamilySpec member = spec;
        member.delta = d;
        ZeroList zeros = generate(member);
        res.points.push_back({d, evaluate_functional(functional, zeros, p, alpha, c, cfg)});
    }
    res.slope = fit_loglog_slope(res.points);
    return res;
}

void RatioBand::absorb(double r) {
    if (!std::isfinite(r) || !(r > 0.0)) return;
    if (samples == 0) {
        min_ratio = max_ratio = r;
    } else {
        min_ratio = std::min(min_ratio, r);
        max_ratio = std::max(max_ratio, r);
    }
    ++samples;
}

double RatioBand::spread() const {
    if (samples == 0 || !(min_ratio > 0.0))
        return std::numeric_limits<double>::infinity();
    return max_ratio / min_ratio;
}

SweepReport theorem1_ratios(const std::vector<FamilySpec>& specs, double p,
                            double alpha, double c, const LabConfig& cfg) {
    if (!(p > 0.5 && p < 1.0))
        throw ValidationError("theorem1_ratios: p must lie in (1/2, 1)");
    SweepReport report;
    report.p = p;
    report.alpha = alpha;
    report.c = c;

    for (const auto& spec : specs) {
        ZeroList zeros = generate(spec);
        FunctionalReport rep = functional_report(zeros, p, alpha, c, cfg);
        report.member_kinds.emplace_back(family_kind_name(spec.kind));

        double hp = std::pow(rep.hp_norm_p, 1.0 / p);
        if (hp > 0.0) {
            report.sublevel_vs_hp.absorb(std::pow(rep.sublevel_Ic, 1.0 / p) / hp);
            report.cone_vs_hp.absorb(std::pow(rep.cone_norm_p, 1.0 / p) / hp);
            report.besov_vs_hp.absorb(rep.besov_q1_sp / rep.hp_norm_p);
        }

        BlaschkeProduct B = product_of(zeros);
        if (B.degree() > 0) {
            double ref_cone = cone_norm(B, 2.0, p, cfg.quad);
            for (double a : {1.5, 2.0, 4.0})
                if (ref_cone > 0.0)
                    report.alpha_band.absorb(cone_norm(B, a, p, cfg.quad) / ref_cone);
            double ref_sub = sublevel_integral(B, 0.5, p, cfg.quad).midpoint();
            for (double cc : {0.25, 0.5, 0.75})
                if (ref_sub > 0.0)
                    report.c_band.absorb(
                        std::pow(sublevel_integral(B, cc, p, cfg.quad).midpoint() / ref_sub,
                                 1.0 / p));
        }

        report.members.push_back(std::move(rep));
    }
    return report;
}

} // namespace blaschke
