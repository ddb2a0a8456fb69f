#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "jordan/algebra.hpp"
#include "jordan/maps.hpp"

namespace jordan {

/// Algebra files are JSON objects:
///   {"name": str, "field": {"type": "rational"} | {"type": "prime", "p": int},
///    "dim": int, "basis": [str], "products": [{"i": int, "j": int, "k": int, "c": scalar-str}]}
/// Indices are zero-based and omitted products are zero. Throws ParseError.
AlgebraPtr algebra_from_json(std::string_view text);
std::string algebra_to_json(const Algebra& a);

AlgebraPtr load_algebra(const std::filesystem::path& path);
void save_algebra(const Algebra& a, const std::filesystem::path& path);

/// Bijections are required for `map`; derivation tables need not be injective.
enum class MapRole { map, derivation };

/// Map files are JSON objects with "domain" and "codomain" (an algebra file
/// path relative to the map file, or an inline algebra object), "entries"
/// ([{"in": coords, "out": coords}], one per carrier element) and an optional
/// "matrix" (codomain-dim rows of scalar strings). Over Q the matrix is
/// required and the entries are checked against it.
///
/// When domain/codomain are supplied they take precedence, and any algebra
/// named in the file must have the same structure. Throws ParseError,
/// AlgebraMismatch and InvalidMapTable.
MapTable map_from_json(std::string_view text, MapRole role, const AlgebraPtr& domain = nullptr,
                       const AlgebraPtr& codomain = nullptr, const std::filesystem::path& base_dir = {});
/// Writes the algebras inline; finite maps list every entry, linear maps add the matrix.
std::string map_to_json(const MapTable& m);

MapTable load_map(const std::filesystem::path& path, MapRole role, const AlgebraPtr& domain = nullptr,
                  const AlgebraPtr& codomain = nullptr);
void save_map(const MapTable& m, const std::filesystem::path& path);

}  // namespace jordan
