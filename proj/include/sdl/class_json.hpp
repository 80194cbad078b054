#pragma once

#include "sdl/concept_class.hpp"

#include <filesystem>
#include <string>

namespace sdl {

/// {"num_points": n, "num_labels": L, "points": [...], "labels": [...], "table": [[...], ...]}
/// "points" and "labels" are optional. Malformed input raises ArgumentError.
ConceptClass class_from_json(const std::string& text, DuplicateRows policy = DuplicateRows::reject);
std::string class_to_json(const ConceptClass& cls);

ConceptClass load_class(const std::filesystem::path& path, DuplicateRows policy = DuplicateRows::reject);
void save_class(const ConceptClass& cls, const std::filesystem::path& path);

}  // namespace sdl
