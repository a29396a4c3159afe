#include "fractalab/ifs_io.hpp"

#include <fstream>
#include <sstream>

#include "fractalab/errors.hpp"

namespace fractalab {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& msg) {
    throw InvalidArgumentError("IFS schema error at " + pointer + ": " + msg);
}

double number_at(const json& j, const std::string& pointer) {
    if (!j.is_number()) schema_error(pointer, "expected a number");
    return j.get<double>();
}

Vec vector_at(const json& j, int d, const std::string& pointer) {
    Vec v(d);
    if (j.is_number() && d == 1) {
        v[0] = j.get<double>();
        return v;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != d) schema_error(pointer, "expected an array of " + std::to_string(d) + " numbers");
    for (int i = 0; i < d; ++i) v[i] = number_at(j[static_cast<std::size_t>(i)], pointer + "/" + std::to_string(i));
    return v;
}

Mat matrix_at(const json& j, int d, const std::string& pointer) {
    Mat m(d, d);
    if (j.is_number() && d == 1) {
        m(0, 0) = j.get<double>();
        return m;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != d) schema_error(pointer, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    for (int r = 0; r < d; ++r) {
        const auto row_ptr = pointer + "/" + std::to_string(r);
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != d) schema_error(row_ptr, "expected a row of " + std::to_string(d) + " numbers");
        for (int c = 0; c < d; ++c) m(r, c) = number_at(row[static_cast<std::size_t>(c)], row_ptr + "/" + std::to_string(c));
    }
    return m;
}

Expression expr_at(const json& j, int d, const std::string& pointer) {
    if (j.is_number()) return Expression::parse(j.dump(), d);
    if (!j.is_string()) schema_error(pointer, "expected an expression string");
    try {
        return Expression::parse(j.get<std::string>(), d);
    } catch (const ParseError& e) {
        schema_error(pointer, e.what());
    }
}

ContractionMap map_at(const json& j, int d, const std::string& pointer) {
    if (!j.is_object() || !j.contains("kind")) schema_error(pointer, "map must be an object with a \"kind\"");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "similarity") {
        if (!j.contains("ratio")) schema_error(pointer, "similarity needs \"ratio\"");
        if (!j.contains("translation")) schema_error(pointer, "similarity needs \"translation\"");
        const double ratio = number_at(j.at("ratio"), pointer + "/ratio");
        Mat iso = j.contains("isometry") ? matrix_at(j.at("isometry"), d, pointer + "/isometry") : Mat::Identity(d, d);
        return ContractionMap::similarity(ratio, std::move(iso), vector_at(j.at("translation"), d, pointer + "/translation"));
    }
    if (kind == "expr") {
        if (!j.contains("map") || !j.contains("jacobian")) schema_error(pointer, "expr map needs \"map\" and \"jacobian\"");
        std::vector<Expression> comps;
        const json& mj = j.at("map");
        if (mj.is_array()) {
            if (static_cast<int>(mj.size()) != d) schema_error(pointer + "/map", "expected " + std::to_string(d) + " components");
            for (int i = 0; i < d; ++i) comps.push_back(expr_at(mj[static_cast<std::size_t>(i)], d, pointer + "/map/" + std::to_string(i)));
        } else {
            if (d != 1) schema_error(pointer + "/map", "a single expression is only allowed when dim = 1");
            comps.push_back(expr_at(mj, d, pointer + "/map"));
        }
        std::vector<Expression> jac;
        const json& jj = j.at("jacobian");
        if (!jj.is_array()) {
            if (d != 1) schema_error(pointer + "/jacobian", "expected a d x d array of expressions");
            jac.push_back(expr_at(jj, d, pointer + "/jacobian"));
        } else {
            if (static_cast<int>(jj.size()) != d) schema_error(pointer + "/jacobian", "expected " + std::to_string(d) + " rows");
            for (int r = 0; r < d; ++r) {
                const json& row = jj[static_cast<std::size_t>(r)];
                const auto row_ptr = pointer + "/jacobian/" + std::to_string(r);
                if (d == 1 && !row.is_array()) {
                    jac.push_back(expr_at(row, d, row_ptr));
                    continue;
                }
                if (!row.is_array() || static_cast<int>(row.size()) != d) schema_error(row_ptr, "expected " + std::to_string(d) + " entries");
                for (int c = 0; c < d; ++c) jac.push_back(expr_at(row[static_cast<std::size_t>(c)], d, row_ptr + "/" + std::to_string(c)));
            }
        }
        return ContractionMap::generic(GenericMap(std::move(comps), std::move(jac)));
    }
    schema_error(pointer + "/kind", "unknown map kind \"" + kind + "\"");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte index just past the offending token.
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed JSON", line, col);
    }
}

IfsSystem parse_ifs(const json& doc) {
    if (!doc.is_object()) schema_error("/", "expected an object");
    if (!doc.contains("dim") || !doc.at("dim").is_number_integer()) schema_error("/dim", "expected an integer");
    const int d = doc.at("dim").get<int>();
    if (d < 1 || d > kMaxDim) schema_error("/dim", "dimension must be 1, 2 or 3");
    if (!doc.contains("maps") || !doc.at("maps").is_array()) schema_error("/maps", "expected an array");
    std::vector<ContractionMap> maps;
    for (std::size_t i = 0; i < doc.at("maps").size(); ++i) maps.push_back(map_at(doc.at("maps")[i], d, "/maps/" + std::to_string(i)));
    if (!doc.contains("bounding_ball") || !doc.at("bounding_ball").is_object()) schema_error("/bounding_ball", "expected an object");
    const json& b = doc.at("bounding_ball");
    if (!b.contains("center") || !b.contains("radius")) schema_error("/bounding_ball", "needs \"center\" and \"radius\"");
    BoundingBall ball{vector_at(b.at("center"), d, "/bounding_ball/center"), number_at(b.at("radius"), "/bounding_ball/radius")};
    return IfsSystem(std::move(maps), std::move(ball));
}

IfsSystem parse_ifs(std::string_view json_text) {
    return parse_ifs(parse_json_text(json_text));
}

IfsSystem load_ifs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open IFS file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ifs(std::string_view(ss.str()));
}

json ifs_to_json(const IfsSystem& system) {
    const int d = system.dim();
    json maps = json::array();
    for (const auto& f : system.maps()) {
        if (const auto* s = f.as_similarity()) {
            json iso = json::array();
            for (int r = 0; r < d; ++r) {
                json row = json::array();
                for (int c = 0; c < d; ++c) row.push_back(s->isometry(r, c));
                iso.push_back(row);
            }
            json tr = json::array();
            for (int i = 0; i < d; ++i) tr.push_back(s->translation[i]);
            maps.push_back({{"kind", "similarity"}, {"ratio", s->ratio}, {"isometry", iso}, {"translation", tr}});
        } else {
            const auto* g = f.as_generic();
            json comps = json::array();
            for (const auto& e : g->components()) comps.push_back(e.source());
            json jac = json::array();
            for (int r = 0; r < d; ++r) {
                json row = json::array();
                for (int c = 0; c < d; ++c) row.push_back(g->jacobian_entries()[static_cast<std::size_t>(r * d + c)].source());
                jac.push_back(row);
            }
            maps.push_back({{"kind", "expr"}, {"map", comps}, {"jacobian", jac}});
        }
    }
    json center = json::array();
    for (int i = 0; i < d; ++i) center.push_back(system.bounding_ball().center[i]);
    return {{"dim", d}, {"maps", maps}, {"bounding_ball", {{"center", center}, {"radius", system.bounding_ball().radius}}}};
}

}  // namespace fractalab
