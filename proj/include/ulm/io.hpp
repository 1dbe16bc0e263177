#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ulm/hom.hpp"
#include "ulm/linear.hpp"
#include "ulm/module.hpp"

namespace ulm {

/// {"ring": {"kind": "int"|"poly", "p_or_q": N}, "multiplicities": {"alpha": m, ...}}
ModuleShape shape_from_json(const nlohmann::json& doc);
nlohmann::json shape_to_json(const ModuleShape& shape);
/// Throws InvalidInput if the file is missing, is not JSON, or describes no valid shape.
ModuleShape read_shape_file(const std::filesystem::path& path);
void write_shape_file(const std::filesystem::path& path, const ModuleShape& shape);

/// A scalar as an integer (integer backend) or a coefficient list, lowest degree first.
nlohmann::json scalar_to_json(const RingSpec& ring, Scalar x, int alpha);
Scalar scalar_from_json(const RingSpec& ring, const nlohmann::json& value, int alpha);

/// {"coords": [[alpha, index, scalar], ...]}, zero coordinates omitted on output
/// and defaulting to zero on input.
nlohmann::json element_to_json(const ModuleShape& shape, const Element& a);
Element element_from_json(const ModuleShape& shape, const nlohmann::json& doc);

nlohmann::json hom_to_json(const HomTable& phi);
nlohmann::json form_to_json(const SubmoduleForm& form);
nlohmann::json table_to_json(const HeightTable& table);

/// Command-line element syntax: coordinates in factor order separated by
/// commas. Integer backend: one integer per coordinate. Polynomial backend:
/// alpha coefficients per coordinate, lowest degree first. Surrounding
/// parentheses are ignored.
Element parse_element(const ModuleShape& shape, std::string_view text);
/// Elements separated by ';'.
ElementTuple parse_tuple(const ModuleShape& shape, std::string_view text);

using CoverList = std::vector<std::pair<std::size_t, std::size_t>>;

/// digraph with nodes n0, n1, ... in label order and one edge lower -> upper per cover.
std::string poset_to_dot(const std::string& name, const std::vector<std::string>& labels, const CoverList& covers);
nlohmann::json poset_to_json(const std::vector<std::string>& labels, const CoverList& covers);

}  // namespace ulm
