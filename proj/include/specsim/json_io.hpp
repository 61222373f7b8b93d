#pragma once

#include <string>

#include <json.hpp>

#include "specsim/constructions.hpp"
#include "specsim/polytope.hpp"
#include "specsim/special_simplex.hpp"
#include "specsim/triangulation.hpp"
#include "specsim/wild.hpp"

namespace specsim {

// Key order is part of the format, so everything goes through ordered_json
// and serialized output is byte-identical across runs.
using Json = nlohmann::ordered_json;

// {"name", "ambient_dim", "vertices", "facets", "labels"?}; coordinates and
// offsets are rational strings and facet normals are ambient, so the
// serialization is exact for polytopes of any hull dimension.
Json to_json(const Polytope& p);

// Rebuilds a polytope from the format above.  "facets" may be omitted (the
// hull is recomputed) and facet normals may point either way; with facets
// present the full validation of the trusted-generator path runs.  Throws
// std::invalid_argument on malformed input.
Polytope polytope_from_json(const Json& j);

// {"simplex", "m", "missed": {"facet_0": vertex, ...}}.
Json to_json(const SpecialSimplexCertificate& cert);
SpecialSimplexCertificate certificate_from_json(const Json& j);

// {"kind": "MEEK"|"MEEK_EQUIVALENT"|"WILD", "dim_A", "dim_Q"}.
Json to_json(const Classification& c);

// {"ordering", "cells"}; cells are sorted vertex index arrays.
Json to_json(const Triangulation& t);

// {"m", "k", "chords": [{"pair", "arc", "excluded_simplex_vertex"}]}.
Json to_json(const WildBlueprint& bp);

// {"elements", "covers"}; covers may name elements or give their indices.
Json to_json(const Poset& poset);
Poset poset_from_json(const Json& j);

// Serialization used for files and stdout: two-space indent plus a trailing
// newline.
std::string dump_json(const Json& j);

// Parse with errors reported as "<origin> line L column C: ...".
Json parse_json_text(const std::string& text, const std::string& origin);
Json parse_json_file(const std::string& path);

void write_json_file(const std::string& path, const Json& j);

}  // namespace specsim
