#include <cmath>

#include "reports.hpp"
#include "fractalab/text.hpp"

namespace fractalab::reports {

using nlohmann::json;

json vec_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json to_json(const PressureEstimate& p) {
    return {{"s", p.s},
            {"gk", p.gk},
            {"value", p.value},
            {"bracket", {p.lo, p.hi}},
            {"method", p.method},
            {"defect_upper", p.defect_upper},
            {"defect_lower", p.defect_lower},
            {"bracket_widths", p.widths}};
}

json to_json(const DimensionResult& d) {
    return {{"value", d.value},
            {"certified", {d.certified_lo, d.certified_hi}},
            {"method", d.method},
            {"depth", d.depth},
            {"ladder", d.ladder}};
}

json to_json(const CutSet& c) {
    json words = json::array();
    for (std::size_t i = 0; i < c.words.size(); ++i)
        words.push_back({{"word", c.words[i].to_string()}, {"diameter", c.geometries[i].diameter}});
    return {{"threshold", c.threshold}, {"size", c.size()}, {"max_length", c.max_length()}, {"words", words}};
}

json to_json(const AwscReport& a) {
    return {{"k", a.k},
            {"t_k", a.t_k},
            {"log_t_k_over_k", std::log(static_cast<double>(a.t_k)) / a.k},
            {"argmax_center", vec_json(a.argmax_center)},
            {"distinct_maps", a.distinct_maps},
            {"cut_set_size", a.cut_set_size}};
}

json to_json(const GibbsConsistency& g) {
    return {{"k", g.k},
            {"s", g.s},
            {"log_ratio", {g.log_ratio_min, g.log_ratio_max}},
            {"bracket", {g.bracket_lo, g.bracket_hi}},
            {"gamma", g.gamma()},
            {"distortion", g.distortion},
            {"condition", g.condition},
            {"gibbs_log_range", {g.gibbs_log_lo, g.gibbs_log_hi}},
            {"within", g.within()}};
}

json to_json(const ErgodicStats& e) {
    return {{"weights", e.weights},
            {"entropy", e.entropy},
            {"lyapunov", e.lyapunov},
            {"lyapunov_stderr", e.lyapunov_stderr},
            {"dim_formula", e.dim_formula},
            {"method", e.method}};
}

json to_json(const BoxDimensionEstimate& b) {
    json curve = json::array();
    for (const auto& p : b.curve) curve.push_back({{"eps", p.eps}, {"N", p.count}, {"generation", p.generation}});
    return {{"value", b.value},
            {"slope", b.slope},
            {"half_width", b.half_width},
            {"scales_used", b.scales_used},
            {"boxcount", curve}};
}

json to_json(const SeriesBound& s) {
    return {{"delta", s.delta},
            {"value", s.value},
            {"dim", s.dim},
            {"epsilon", s.epsilon},
            {"pressure_above_hi", s.pressure_above_hi},
            {"pressure_below_lo", s.pressure_below_lo}};
}

json to_json(const BakerConfig& b) {
    return {{"g", b.g.name()},
            {"s_g", b.s_g},
            {"dim", b.dim},
            {"converges_at_s_g", b.converges_at_s_g},
            {"root_factor_below", b.root_factor_below},
            {"condition_flags", {{"entropy_branch", b.entropy_branch}, {"equal_ratio_branch", b.equal_ratio_branch}}},
            {"g_monotone", b.g_monotone}};
}

json to_json(const TargetExperiment& t) {
    json gens = json::array();
    for (const auto& g : t.generations)
        gens.push_back({{"cut_radius", g.cut_radius}, {"balls", g.size()}, {"max_radius", g.max_radius()}});
    json stab = json::array();
    for (const auto& s : t.stabilization)
        stab.push_back({{"offset", s.offset}, {"value", s.value}, {"half_width", s.half_width}, {"scales_used", s.scales_used}});
    return {{"x0", vec_json(t.x0)},
            {"delta", t.delta},
            {"radius_exponent", t.rule.exponent},
            {"g", t.rule.g.name()},
            {"generations", gens},
            {"dim_estimate", to_json(t.estimate)},
            {"stabilization", stab},
            {"series_bound", t.series_bound}};
}

json to_json(const ContentEstimate& c) {
    json cover = json::array();
    for (const auto& b : c.cover) cover.push_back({{"center", vec_json(b.center)}, {"side", b.side}});
    return {{"s", c.s},
            {"value", c.value},
            {"method", c.method},
            {"set_diameter", c.set_diameter},
            {"scale_floor", c.scale_floor},
            {"cover", cover}};
}

json to_json(const EssentialContentEstimate& e) {
    return {{"s", e.s},
            {"eta", e.eta},
            {"grid_scale", e.grid_scale},
            {"value", e.value},
            {"plain_value", e.plain_value},
            {"retained_mass", e.retained_mass},
            {"discarded_boxes", e.discarded_boxes},
            {"occupied_boxes", e.occupied_boxes},
            {"sample_in_region", e.sample_in_region},
            {"cover", to_json(e.content)["cover"]}};
}

std::string pressure_csv(const PressureEstimate& p) {
    std::string out = "k,g_k,g_k_over_k\n";
    for (std::size_t i = 0; i < p.gk.size(); ++i)
        out += std::to_string(i + 1) + "," + format_number(p.gk[i]) + "," + format_number(p.gk[i] / static_cast<double>(i + 1)) + "\n";
    return out;
}

std::string cutset_csv(const CutSet& c) {
    std::string out = "word,length,diameter\n";
    for (std::size_t i = 0; i < c.words.size(); ++i)
        out += c.words[i].to_string() + "," + std::to_string(c.words[i].size()) + "," + format_number(c.geometries[i].diameter) + "\n";
    return out;
}

std::string boxcount_csv(const BoxDimensionEstimate& b) {
    std::string out = "eps,N,logN\n";
    for (const auto& p : b.curve)
        out += format_number(p.eps) + "," + std::to_string(p.count) + "," + format_number(std::log(static_cast<double>(p.count))) + "\n";
    return out;
}

std::string content_csv(const EssentialContentEstimate& e) {
    return "s,eta,grid_scale,value,retained_mass\n" + format_number(e.s) + "," + format_number(e.eta) + "," +
           format_number(e.grid_scale) + "," + format_number(e.value) + "," + format_number(e.retained_mass) + "\n";
}

}  // namespace fractalab::reports
