#include "blaschke/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace blaschke::io {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json band_to_json(const RatioBand& band) {
    return {{"min", band.min_ratio}, {"max", band.max_ratio},
            {"spread", band.spread()}, {"samples", band.samples}};
}

} // namespace

json zero_list_to_json(const ZeroList& zeros) {
    json arr = json::array();
    for (const auto& e : zeros.entries())
        arr.push_back({{"re", e.point.re}, {"im", e.point.im}, {"mult", e.multiplicity}});
    return {{"zeros", arr}};
}

ZeroList zero_list_from_json(const json& j) {
    if (!j.is_object() || !j.contains("zeros") || !j["zeros"].is_array())
        throw ValidationError("zero list JSON: missing \"zeros\" array");
    ZeroList out;
    for (const auto& item : j["zeros"]) {
        if (!item.contains("re") || !item.contains("im"))
            throw ValidationError("zero list JSON: entry missing re/im");
        double re = item["re"].get<double>();
        double im = item["im"].get<double>();
        int mult = item.value("mult", 1);
        out.add(DiskPoint::checked(re, im), mult);
    }
    return out;
}

json product_to_json(const BlaschkeProduct& B) {
    json j = zero_list_to_json(B.zeros());
    j["unimodular"] = {{"re", B.unimodular_factor().real()},
                       {"im", B.unimodular_factor().imag()}};
    return j;
}

BlaschkeProduct product_from_json(const json& j) {
    ZeroList zeros = zero_list_from_json(j);
    if (zeros.empty()) return BlaschkeProduct::one();
    if (j.contains("unimodular")) {
        cplx xi{j["unimodular"]["re"].get<double>(), j["unimodular"]["im"].get<double>()};
        return make_product(std::move(zeros), xi);
    }
    return make_product(std::move(zeros));
}

json config_to_json(const LabConfig& cfg) {
    return {{"boundary_samples", cfg.quad.boundary_samples},
            {"radial_levels", cfg.quad.radial_levels},
            {"refinement_depth", cfg.quad.refinement_depth},
            {"rel_tol", cfg.quad.rel_tol},
            {"radial_offset", cfg.quad.radial_offset},
            {"tree_depth", cfg.tree_depth},
            {"family_n_max", cfg.family_n_max},
            {"root_tol", cfg.solver.root_tol},
            {"rng", "splitmix64"}};
}

json report_to_json(const FunctionalReport& rep, const LabConfig& cfg) {
    json j{{"schema_version", kSchemaVersion},
           {"p", rep.p},
           {"alpha", rep.alpha},
           {"c", rep.c},
           {"degree", rep.degree},
           {"hp_norm_p", rep.hp_norm_p},
           {"cone_norm_p", rep.cone_norm_p},
           {"sublevel_Ic", rep.sublevel_Ic},
           {"sublevel_width", rep.sublevel_width},
           {"besov_q1_sp", rep.besov_q1_sp},
           {"carleson_log", rep.carleson_log},
           {"weak_hp", rep.weak_hp},
           {"dyadic_count", rep.dyadic_count},
           {"family_sum", rep.family_sum},
           {"family_tail", rep.family_tail},
           {"annulus_sum", rep.annulus_sum},
           {"gap_sum", rep.gap_sum},
           {"config", config_to_json(cfg)}};
    if (!rep.errors.empty()) j["errors"] = rep.errors;
    return j;
}

std::string report_csv_header() {
    return "schema_version,p,alpha,c,degree,hp_norm_p,cone_norm_p,sublevel_Ic,"
           "sublevel_width,besov_q1_sp,carleson_log,weak_hp,dyadic_count,family_sum,"
           "family_tail,annulus_sum,gap_sum";
}

std::string report_csv_row(const FunctionalReport& rep) {
    std::ostringstream os;
    os << kSchemaVersion << ',' << fmt(rep.p) << ',' << fmt(rep.alpha) << ','
       << fmt(rep.c) << ',' << rep.degree << ',' << fmt(rep.hp_norm_p) << ','
       << fmt(rep.cone_norm_p) << ',' << fmt(rep.sublevel_Ic) << ','
       << fmt(rep.sublevel_width) << ',' << fmt(rep.besov_q1_sp) << ','
       << fmt(rep.carleson_log) << ',' << fmt(rep.weak_hp) << ','
       << fmt(rep.dyadic_count) << ',' << fmt(rep.family_sum) << ','
       << fmt(rep.family_tail) << ',' << fmt(rep.annulus_sum) << ','
       << fmt(rep.gap_sum);
    return os.str();
}

json tree_report_json(const DyadicTree& tree, double p, int n_max) {
    json sectors = json::array();
    for (const auto& [q, n] : tree.counts()) {
        sectors.push_back({{"level", q.level},
                           {"index", q.index},
                           {"N", n},
                           {"F", sector_density(tree, q)}});
    }
    json families = json::array();
    for (const auto& fam : maximal_families(tree, n_max)) {
        json fs = json::array();
        for (const auto& q : fam.sectors)
            fs.push_back({{"level", q.level}, {"index", q.index}});
        families.push_back(
            {{"N", fam.N}, {"total_length", fam.total_length}, {"sectors", fs}});
    }
    FamilySum sum = maximal_family_sum(tree, p, n_max);
    return {{"schema_version", kSchemaVersion},
            {"p", p},
            {"max_level", tree.max_level()},
            {"n_max", n_max},
            {"total_assigned", tree.total_assigned()},
            {"deep_zero_entries", tree.deep_zeros().size()},
            {"sectors", sectors},
            {"families", families},
            {"family_sum", sum.value},
            {"family_tail", sum.tail_length},
            {"dyadic_count_sum", dyadic_count_sum(tree, p)}};
}

json arcs_to_json(const BoundaryArcSet& arcs) {
    json arr = json::array();
    for (const auto& a : arcs.arcs()) arr.push_back({{"start", a.start}, {"end", a.end}});
    return {{"arcs", arr}, {"total_normalized_length", arcs.total_normalized_length()}};
}

json sweep_to_json(const SweepResult& res, const LabConfig& cfg) {
    json pts = json::array();
    for (const auto& pt : res.points) pts.push_back({{"delta", pt.delta}, {"value", pt.value}});
    return {{"schema_version", kSchemaVersion},
            {"functional", res.functional},
            {"p", res.p},
            {"alpha", res.alpha},
            {"c", res.c},
            {"slope", res.slope},
            {"points", pts},
            {"config", config_to_json(cfg)}};
}

std::string sweep_series_csv(const SweepResult& res) {
    std::ostringstream os;
    os << "delta," << res.functional << '\n';
    for (const auto& pt : res.points) os << fmt(pt.delta) << ',' << fmt(pt.value) << '\n';
    return os.str();
}

json ratios_to_json(const SweepReport& report, const LabConfig& cfg) {
    json members = json::array();
    for (size_t i = 0; i < report.members.size(); ++i) {
        json m = report_to_json(report.members[i], cfg);
        m.erase("config");
        m["kind"] = report.member_kinds[i];
        members.push_back(std::move(m));
    }
    return {{"schema_version", kSchemaVersion},
            {"p", report.p},
            {"alpha", report.alpha},
            {"c", report.c},
            {"sublevel_vs_hp", band_to_json(report.sublevel_vs_hp)},
            {"cone_vs_hp", band_to_json(report.cone_vs_hp)},
            {"besov_vs_hp", band_to_json(report.besov_vs_hp)},
            {"alpha_band", band_to_json(report.alpha_band)},
            {"c_band", band_to_json(report.c_band)},
            {"members", members},
            {"config", config_to_json(cfg)}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

json read_json_file(const std::string& path) {
    json j = json::parse(read_text_file(path), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ValidationError("malformed JSON in " + path);
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace blaschke::io
