// blaschke: generate zero sequences, evaluate disk functionals, dump dyadic
// reports, run scaling sweeps, and emit plot series over JSON/CSV files.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "blaschke/io.hpp"

namespace fs = std::filesystem;
using namespace blaschke;

namespace {

// Relative output paths land in BLASCHKE_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("BLASCHKE_OUT_DIR");
    if (dir && *dir && fs::path(path).is_relative())
        return (fs::path(dir) / path).string();
    return path;
}

struct QuadFlags {
    LabConfig cfg;

    void attach(CLI::App* app) {
        app->add_option("--samples", cfg.quad.boundary_samples, "boundary quadrature nodes");
        app->add_option("--radial-levels", cfg.quad.radial_levels, "geometric radial levels");
        app->add_option("--refine", cfg.quad.refinement_depth, "sublevel refinement depth");
        app->add_option("--rel-tol", cfg.quad.rel_tol, "relative quadrature tolerance");
        app->add_option("--radial-offset", cfg.quad.radial_offset,
                        "near-boundary evaluation offset");
        app->add_option("--tree-depth", cfg.tree_depth, "dyadic tree max level");
        app->add_option("--nmax", cfg.family_n_max, "maximal-family truncation");
    }
};

struct FamilyFlags {
    std::string kind = "radial";
    FamilySpec spec;
    std::vector<std::int64_t> counts;
    std::vector<int> levels;

    void attach(CLI::App* app) {
        app->add_option("--kind", kind, "radial|stolz|dyadic|random|single")->required();
        app->add_option("--depth", spec.depth, "levels J for radial/stolz");
        app->add_option("--beta", spec.beta, "Stolz aperture");
        app->add_option("--counts", counts, "per-level counts N_j (stolz)")->delimiter(',');
        app->add_option("--levels", levels, "pattern levels (dyadic)")->delimiter(',');
        app->add_option("--stride", spec.pattern_stride, "pattern stride");
        app->add_option("--count", spec.pattern_count, "pattern multiplicity per center");
        app->add_option("--n", spec.n, "point count (random)");
        app->add_option("--max-radius", spec.max_radius, "radius cap (random)");
        app->add_option("--delta", spec.delta, "gap of the single zero");
        app->add_option("--seed", spec.seed, "rng seed");
    }

    FamilySpec finish() {
        spec.kind = family_kind_from_name(kind);
        if (!counts.empty()) {
            spec.level_counts = counts;
            spec.depth = std::max<int>(spec.depth, int(counts.size()));
        }
        spec.pattern_levels = levels;
        return spec;
    }
};

void check_params(double p, double alpha, double c) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
    if (!(alpha > 1.0)) throw ValidationError("alpha must be > 1");
    if (!(c > 0.0 && c < 1.0)) throw ValidationError("c must lie in (0,1)");
}

int run(int argc, char** argv) {
    CLI::App app{"functionals of finite Blaschke products"};
    app.require_subcommand(1);

    // --- gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a zero-list file");
    FamilyFlags gen_family;
    gen_family.attach(gen);
    std::string gen_out = "zeros.json";
    gen->add_option("--out", gen_out, "output zero-list JSON");

    // --- norms -----------------------------------------------------------
    auto* norms = app.add_subcommand("norms", "full functional report for a zero list");
    std::string norms_in, norms_out = "report.json", norms_csv;
    double n_p = 0.75, n_alpha = 2.0, n_c = 0.5;
    norms->add_option("zeros", norms_in, "zero-list JSON file")->required();
    norms->add_option("--p", n_p);
    norms->add_option("--alpha", n_alpha);
    norms->add_option("--c", n_c);
    norms->add_option("--out", norms_out, "report JSON");
    norms->add_option("--csv", norms_csv, "append a CSV row here");
    QuadFlags norms_quad;
    norms_quad.attach(norms);

    // --- dyadic ----------------------------------------------------------
    auto* dyadic = app.add_subcommand("dyadic", "sector dump, families, dyadic sums");
    std::string dy_in, dy_out = "dyadic.json";
    double dy_p = 0.75;
    int dy_depth = 40, dy_nmax = 20;
    dyadic->add_option("zeros", dy_in, "zero-list JSON file")->required();
    dyadic->add_option("--p", dy_p);
    dyadic->add_option("--depth", dy_depth, "tree max level");
    dyadic->add_option("--nmax", dy_nmax, "family truncation");
    dyadic->add_option("--out", dy_out, "report JSON");

    // --- sweep -----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "log-log exponent sweep over a gap grid");
    FamilyFlags sweep_family;
    sweep_family.attach(sweep);
    std::string sw_functional = "hp_pow_p", sw_out = "sweep.json", sw_series;
    double sw_p = 0.75, sw_alpha = 2.0, sw_c = 0.5;
    int sw_kmin = 4, sw_kmax = 12;
    std::vector<double> sw_deltas;
    sweep->add_option("--functional", sw_functional, "one of the named functionals");
    sweep->add_option("--p", sw_p);
    sweep->add_option("--alpha", sw_alpha);
    sweep->add_option("--c", sw_c);
    sweep->add_option("--kmin", sw_kmin, "smallest k in delta = 2^-k");
    sweep->add_option("--kmax", sw_kmax, "largest k in delta = 2^-k");
    sweep->add_option("--deltas", sw_deltas, "explicit delta grid")->delimiter(',');
    sweep->add_option("--out", sw_out, "sweep JSON");
    sweep->add_option("--series", sw_series, "plot series CSV");
    QuadFlags sweep_quad;
    sweep_quad.attach(sweep);

    // --- preimage --------------------------------------------------------
    auto* pre = app.add_subcommand("preimage", "Frostman shift and preimage gap sum");
    std::string pre_in, pre_out = "preimage.json";
    double pre_are = 0.0, pre_aim = 0.0, pre_p = 0.75;
    pre->add_option("zeros", pre_in, "zero-list JSON file")->required();
    pre->add_option("--a-re", pre_are)->required();
    pre->add_option("--a-im", pre_aim);
    pre->add_option("--p", pre_p);
    pre->add_option("--out", pre_out, "preimage report JSON");

    // --- cone ------------------------------------------------------------
    auto* cone = app.add_subcommand("cone", "cone-function profile and level arcs");
    std::string cone_in, cone_out = "cone.json", cone_profile_csv;
    double cn_alpha = 2.0, cn_p = 0.75;
    int cn_levels = 8;
    cone->add_option("zeros", cone_in, "zero-list JSON file")->required();
    cone->add_option("--alpha", cn_alpha);
    cone->add_option("--p", cn_p);
    cone->add_option("--levels", cn_levels, "emit level arcs for N = 1..levels");
    cone->add_option("--out", cone_out, "cone report JSON");
    cone->add_option("--profile", cone_profile_csv, "(theta, F) profile CSV");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        FamilySpec spec = gen_family.finish();
        ZeroList zeros = generate(spec);
        io::json j = io::zero_list_to_json(zeros);
        j["schema_version"] = io::kSchemaVersion;
        j["kind"] = family_kind_name(spec.kind);
        j["seed"] = spec.seed;
        j["rng"] = spec.rng;
        io::write_json_file(resolve_out(gen_out), j);
        std::cout << "degree " << zeros.degree();
        if (zeros.degree() >= 2)
            std::cout << "  separation " << separation_constant(zeros);
        std::cout << "\n";
    }

    if (norms->parsed()) {
        check_params(n_p, n_alpha, n_c);
        ZeroList zeros = io::zero_list_from_json(io::read_json_file(norms_in));
        FunctionalReport rep = functional_report(zeros, n_p, n_alpha, n_c, norms_quad.cfg);
        io::write_json_file(resolve_out(norms_out), io::report_to_json(rep, norms_quad.cfg));
        if (!norms_csv.empty()) {
            std::string path = resolve_out(norms_csv);
            std::string row = io::report_csv_row(rep) + "\n";
            if (!fs::exists(path))
                io::write_text_file(path, io::report_csv_header() + "\n" + row);
            else
                io::write_text_file(path, io::read_text_file(path) + row);
        }
        for (const auto& err : rep.errors) std::cerr << "warning: " << err << "\n";
        std::cout << "hp_norm_p " << rep.hp_norm_p << "  cone_norm_p " << rep.cone_norm_p
                  << "  I(c) " << rep.sublevel_Ic << "\n";
        if (!rep.errors.empty()) return 3;
    }

    if (dyadic->parsed()) {
        if (!(dy_p > 0.0 && dy_p < 1.0)) throw ValidationError("p must lie in (0,1)");
        ZeroList zeros = io::zero_list_from_json(io::read_json_file(dy_in));
        DyadicTree tree = build_tree(zeros, dy_depth);
        if (!tree.deep_zeros().empty())
            std::cerr << "warning: " << tree.deep_zeros().size()
                      << " zero entries deeper than level " << dy_depth << "\n";
        io::write_json_file(resolve_out(dy_out), io::tree_report_json(tree, dy_p, dy_nmax));
        std::cout << "sectors " << tree.counts().size() << "  assigned "
                  << tree.total_assigned() << "\n";
    }

    if (sweep->parsed()) {
        check_params(sw_p, sw_alpha, sw_c);
        FamilySpec spec = sweep_family.finish();
        if (sw_deltas.empty()) {
            if (sw_kmin > sw_kmax) throw ValidationError("kmin must be <= kmax");
            for (int k = sw_kmin; k <= sw_kmax; ++k)
                sw_deltas.push_back(std::ldexp(1.0, -k));
        }
        spec.delta_grid = sw_deltas;
        SweepResult res =
            sweep_exponent(spec, sw_functional, sw_p, sw_alpha, sw_c, sweep_quad.cfg);
        io::write_json_file(resolve_out(sw_out), io::sweep_to_json(res, sweep_quad.cfg));
        if (!sw_series.empty())
            io::write_text_file(resolve_out(sw_series), io::sweep_series_csv(res));
        std::cout << "slope " << res.slope << "\n";
    }

    if (pre->parsed()) {
        if (!(pre_p > 0.0 && pre_p < 1.0)) throw ValidationError("p must lie in (0,1)");
        BlaschkeProduct B = io::product_from_json(io::read_json_file(pre_in));
        DiskPoint a = DiskPoint::checked(pre_are, pre_aim);
        BlaschkeProduct shifted = frostman_shift(B, a);
        double max_res = 0.0;
        for (const auto& e : shifted.zeros().entries())
            max_res = std::max(max_res,
                               std::abs(evaluate(B, e.point.value()) - a.value()));
        io::json j = io::product_to_json(shifted);
        j["schema_version"] = io::kSchemaVersion;
        j["a"] = {{"re", a.re}, {"im", a.im}};
        j["p"] = pre_p;
        j["preimage_gap_sum"] = gap_power_sum(shifted.zeros(), 1.0 - pre_p);
        j["max_residual"] = max_res;
        io::write_json_file(resolve_out(pre_out), j);
        std::cout << "preimages " << shifted.degree() << "  gap_sum "
                  << gap_power_sum(shifted.zeros(), 1.0 - pre_p) << "\n";
    }

    if (cone->parsed()) {
        if (!(cn_alpha > 1.0)) throw ValidationError("alpha must be > 1");
        if (!(cn_p > 0.0 && cn_p < 1.0)) throw ValidationError("p must lie in (0,1)");
        BlaschkeProduct B = io::product_from_json(io::read_json_file(cone_in));
        QuadratureConfig quad;
        double norm = cone_norm(B, cn_alpha, cn_p, quad);
        io::json arcs = io::json::array();
        for (int N = 1; N <= cn_levels; ++N) {
            io::json a = io::arcs_to_json(level_arcs(B, cn_alpha, N));
            a["N"] = N;
            arcs.push_back(std::move(a));
        }
        io::json j{{"schema_version", io::kSchemaVersion},
                   {"alpha", cn_alpha},
                   {"p", cn_p},
                   {"cone_norm", norm},
                   {"cone_norm_p", std::pow(norm, cn_p)},
                   {"level_arcs", arcs}};
        io::write_json_file(resolve_out(cone_out), j);
        if (!cone_profile_csv.empty()) {
            ConeProfile prof = cone_profile(B, cn_alpha);
            std::ostringstream os;
            os << "theta_start,theta_end,F\n";
            if (prof.breakpoints.empty()) {
                os << "0," << kTwoPi << ',' << prof.constant << "\n";
            } else {
                for (size_t i = 0; i < prof.breakpoints.size(); ++i) {
                    double a = prof.breakpoints[i];
                    double b = (i + 1 < prof.breakpoints.size())
                                   ? prof.breakpoints[i + 1]
                                   : prof.breakpoints[0] + kTwoPi;
                    os << a << ',' << b << ',' << prof.values[i] << "\n";
                }
            }
            io::write_text_file(resolve_out(cone_profile_csv), os.str());
        }
        std::cout << "cone_norm " << norm << "\n";
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
