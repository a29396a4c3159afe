#pragma once

#include <filesystem>
#include <json.hpp>
#include <string_view>

#include "fractalab/ifs.hpp"

namespace fractalab {

/// Reads the IFS definition schema:
///
///   {"dim": d,
///    "maps": [{"kind": "similarity", "ratio": r, "isometry": [[...]], "translation": [...]},
///             {"kind": "expr", "map": "..." | ["...", ...], "jacobian": "..." | [["...", ...], ...]}],
///    "bounding_ball": {"center": [...], "radius": R}}
///
/// For d = 1 scalars may replace one-element arrays, and "isometry"
/// defaults to the identity. Malformed JSON raises ParseError with the
/// line and column; schema violations raise InvalidArgumentError naming
/// the offending JSON pointer.
IfsSystem parse_ifs(std::string_view json_text);
IfsSystem parse_ifs(const nlohmann::json& doc);
IfsSystem load_ifs(const std::filesystem::path& path);

/// Parses JSON text, converting nlohmann byte offsets into line/column.
nlohmann::json parse_json_text(std::string_view text);

nlohmann::json ifs_to_json(const IfsSystem& system);

}  // namespace fractalab
