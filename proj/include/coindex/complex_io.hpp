#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "coindex/simplicial.hpp"

namespace coindex {

/// Raised on malformed complex files; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON document format:
///   { "n": 6, "facets": [[0,1,2], ...], "name": "...", "embed_dim": 4 }
/// "name" and "embed_dim" are optional.  An empty "facets" array denotes the
/// void complex; a single empty facet denotes the empty complex.
SimplicialComplex complex_from_json(const nlohmann::json& doc);
nlohmann::ordered_json complex_to_json(const SimplicialComplex& c);

SimplicialComplex load_complex(const std::filesystem::path& path);
void store_complex(const SimplicialComplex& c, const std::filesystem::path& path);

}  // namespace coindex
