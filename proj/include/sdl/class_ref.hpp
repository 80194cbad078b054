#pragma once

#include "sdl/concept_class.hpp"

#include <string>
#include <vector>

namespace sdl {

/// Resolves a class reference: a zoo URI (see zoo_uris()) or a path to a class JSON file.
/// Throws ArgumentError for unknown generators, malformed parameters or unreadable files.
ConceptClass resolve_class(const std::string& ref, DuplicateRows policy = DuplicateRows::reject);

/// One line per zoo URI form, for help output.
const std::vector<std::string>& zoo_uris();

}  // namespace sdl
