#include "specsim/json_io.hpp"

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specsim {

namespace {

Rat rat_entry_(const Json& j, const char* where) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_unsigned()) return Rat(j.get<unsigned long long>());
  throw std::invalid_argument(std::string(where) +
                              " must be a rational string or an integer");
}

Vec vec_entry_(const Json& j, std::size_t dim, const char* where) {
  if (!j.is_array() || j.size() != dim)
    throw std::invalid_argument(std::string(where) + " must be an array of " +
                                std::to_string(dim) + " coordinates");
  Vec v;
  for (const Json& c : j) v.push_back(rat_entry_(c, where));
  return v;
}

std::size_t index_entry_(const Json& j, const char* where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw std::invalid_argument(std::string(where) +
                                " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json lifted_facet_(const Polytope& p, std::size_t f) {
  // Facet normals live in hull-frame coordinates; scatter them back onto the
  // ambient coordinates so readers never need the frame.
  const Hyperplane& h = p.facets()[f];
  Vec ambient = zero_vec(p.ambient_dim());
  const auto& frame = p.frame_coords();
  for (std::size_t t = 0; t < frame.size(); ++t) ambient[frame[t]] = h.normal[t];
  Json out;
  Json normal = Json::array();
  for (const Rat& c : ambient) normal.push_back(rat_to_string(c));
  out["normal"] = normal;
  out["offset"] = rat_to_string(h.offset);
  return out;
}

}  // namespace

Json to_json(const Polytope& p) {
  Json j;
  j["name"] = p.name();
  j["ambient_dim"] = p.ambient_dim();
  Json verts = Json::array();
  for (const Vec& v : p.vertices()) {
    Json row = Json::array();
    for (const Rat& c : v) row.push_back(rat_to_string(c));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  Json facets = Json::array();
  for (std::size_t f = 0; f < p.facet_count(); ++f)
    facets.push_back(lifted_facet_(p, f));
  j["facets"] = facets;
  if (!p.labels().empty()) j["labels"] = p.labels();
  return j;
}

Polytope polytope_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("polytope must be a JSON object");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string())
      throw std::invalid_argument("polytope name must be a string");
    name = j["name"].get<std::string>();
  }
  if (!j.contains("ambient_dim"))
    throw std::invalid_argument("polytope needs an ambient_dim");
  const std::size_t ambient = index_entry_(j["ambient_dim"], "ambient_dim");
  if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty())
    throw std::invalid_argument("polytope needs a non-empty vertices array");

  std::vector<Vec> verts;
  for (const Json& row : j["vertices"])
    verts.push_back(vec_entry_(row, ambient, "vertex"));

  Polytope p;
  if (j.contains("facets")) {
    if (!j["facets"].is_array() || j["facets"].empty())
      throw std::invalid_argument("facets must be a non-empty array");
    std::vector<std::vector<std::size_t>> facet_vertices;
    for (const Json& fj : j["facets"]) {
      if (!fj.is_object() || !fj.contains("normal") || !fj.contains("offset"))
        throw std::invalid_argument("each facet needs a normal and an offset");
      Hyperplane h;
      h.normal = vec_entry_(fj["normal"], ambient, "facet normal");
      h.offset = rat_entry_(fj["offset"], "facet offset");
      if (is_zero(h.normal))
        throw std::invalid_argument("facet normal must be nonzero");
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (side_of(h, verts[i]) == Side::On) on.push_back(i);
      facet_vertices.push_back(std::move(on));
    }
    // The stated vertex sets feed the trusted-generator constructor, which
    // re-derives and validates every hyperplane, so stated orientations and
    // scalings are irrelevant.
    p = Polytope::from_vertices_and_facets(std::move(name), ambient,
                                           std::move(verts),
                                           std::move(facet_vertices));
  } else {
    p = Polytope::from_points(std::move(name), ambient, std::move(verts));
  }

  if (j.contains("labels")) {
    if (!j["labels"].is_array())
      throw std::invalid_argument("labels must be an array of strings");
    std::vector<std::string> labels;
    for (const Json& l : j["labels"]) {
      if (!l.is_string())
        throw std::invalid_argument("labels must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
    p.set_labels(std::move(labels));
  }
  return p;
}

Json to_json(const SpecialSimplexCertificate& cert) {
  Json j;
  j["simplex"] = cert.simplex_vertices;
  j["m"] = cert.m;
  Json missed = Json::object();
  for (const auto& entry : cert.missed_vertex_per_facet)
    missed["facet_" + std::to_string(entry.first)] = entry.second;
  j["missed"] = missed;
  return j;
}

SpecialSimplexCertificate certificate_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("simplex") || !j.contains("m") ||
      !j.contains("missed"))
    throw std::invalid_argument("certificate needs simplex, m, and missed");
  SpecialSimplexCertificate cert;
  if (!j["simplex"].is_array())
    throw std::invalid_argument("certificate simplex must be an index array");
  for (const Json& v : j["simplex"])
    cert.simplex_vertices.push_back(index_entry_(v, "simplex vertex"));
  if (!j["m"].is_number_integer() && !j["m"].is_number_unsigned())
    throw std::invalid_argument("certificate m must be an integer");
  cert.m = j["m"].get<int>();
  if (!j["missed"].is_object())
    throw std::invalid_argument("certificate missed must be an object");
  for (const auto& entry : j["missed"].items()) {
    const std::string& key = entry.key();
    const std::string prefix = "facet_";
    if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size())
      throw std::invalid_argument("missed keys look like facet_<index>");
    std::size_t facet = 0;
    try {
      facet = std::stoul(key.substr(prefix.size()));
    } catch (const std::exception&) {
      throw std::invalid_argument("missed keys look like facet_<index>");
    }
    cert.missed_vertex_per_facet[facet] =
        index_entry_(entry.value(), "missed vertex");
  }
  return cert;
}

Json to_json(const Classification& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["dim_A"] = c.dim_A;
  j["dim_Q"] = c.dim_Q;
  return j;
}

Json to_json(const Triangulation& t) {
  Json j;
  j["ordering"] = t.ordering;
  Json cells = Json::array();
  for (VSet c : t.cells) cells.push_back(set_bits(c));
  j["cells"] = cells;
  return j;
}

Json to_json(const WildBlueprint& bp) {
  Json j;
  j["m"] = bp.m;
  j["k"] = bp.k;
  Json chords = Json::array();
  for (const Chord& c : bp.chords) {
    Json cj;
    cj["pair"] = Json::array({c.flanks[0], c.flanks[1]});
    cj["arc"] = c.arc;
    cj["excluded_simplex_vertex"] = c.excluded_simplex_vertex;
    chords.push_back(cj);
  }
  j["chords"] = chords;
  return j;
}

Json to_json(const Poset& poset) {
  Json j;
  j["elements"] = poset.elements;
  Json covers = Json::array();
  for (const auto& cover : poset.covers)
    covers.push_back(Json::array({cover.first, cover.second}));
  j["covers"] = covers;
  return j;
}

Poset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array() ||
      j["elements"].empty())
    throw std::invalid_argument("poset needs a non-empty elements array");
  Poset poset;
  for (const Json& e : j["elements"]) {
    if (!e.is_string())
      throw std::invalid_argument("poset elements must be strings");
    poset.elements.push_back(e.get<std::string>());
  }
  auto resolve = [&](const Json& e) -> std::size_t {
    if (e.is_string()) {
      const std::string name = e.get<std::string>();
      for (std::size_t i = 0; i < poset.elements.size(); ++i)
        if (poset.elements[i] == name) return i;
      throw std::invalid_argument("cover names unknown element " + name);
    }
    return index_entry_(e, "cover index");
  };
  if (j.contains("covers")) {
    if (!j["covers"].is_array())
      throw std::invalid_argument("covers must be an array of pairs");
    for (const Json& cover : j["covers"]) {
      if (!cover.is_array() || cover.size() != 2)
        throw std::invalid_argument("each cover is a [lower, upper] pair");
      poset.covers.emplace_back(resolve(cover[0]), resolve(cover[1]));
    }
  }
  return poset;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending byte; report it as a
    // line and column so editors can jump to it.
    std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
    if (pos > text.size()) pos = text.size();
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw std::invalid_argument(origin + " line " + std::to_string(line) +
                                " column " + std::to_string(column) +
                                ": malformed JSON");
  }
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument(path + ": cannot read");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << dump_json(j);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace specsim
