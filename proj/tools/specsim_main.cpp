#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specsim/constructions.hpp"
#include "specsim/errors.hpp"
#include "specsim/json_io.hpp"
#include "specsim/special_simplex.hpp"
#include "specsim/triangulation.hpp"
#include "specsim/wild.hpp"

namespace {

using namespace specsim;

// Exit contract: 0 success with certificates (or plain success), 3 success
// without certificates, 2 usage, 1 input or capacity error.
constexpr int kOk = 0;
constexpr int kNoCertificates = 3;
constexpr int kUsage = 2;
constexpr int kInputError = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Polytope load_polytope(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return polytope_from_json(parse_json_text(buffer.str(), "<stdin>"));
  }
  return polytope_from_json(parse_json_file(path));
}

// Builtin polytope specs: "segment", "cube:3", "cross:2", "simplex:4",
// "ngon:6"; anything else is read as a polytope JSON file.
Polytope polytope_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  int arg = 0;
  if (colon != std::string::npos) {
    try {
      arg = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("bad parameter in '" + spec + "'");
    }
  }
  if (head == "segment" && colon == std::string::npos) return cube(1);
  if (colon != std::string::npos) {
    if (head == "cube") return cube(arg);
    if (head == "cross") return cross(arg);
    if (head == "simplex") return simplex(arg);
    if (head == "ngon") return ngon(arg);
  }
  return polytope_from_json(parse_json_file(spec));
}

std::string fvec_text(const Json& fv) {
  std::string s = "(";
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (i) s += ",";
    s += fv[i].dump();
  }
  return s + ")";
}

std::string indices_text(const Json& arr) {
  std::string s = "{";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ",";
    s += arr[i].dump();
  }
  return s + "}";
}

// ---------------------------------------------------------------- analyze

Json analysis_report(const Polytope& p) {
  SpecialSimplexSearch search = find_special_simplices(p);
  Json rep;
  rep["input"] = p.name();
  rep["dim"] = p.dim();
  rep["f_vector"] = p.f_vector();
  rep["polytope_is_simplex"] = search.polytope_is_simplex;
  Json certs = Json::array();
  for (const SpecialSimplexCertificate& cert : search.certificates) {
    Json entry;
    entry["certificate"] = to_json(cert);

    bool have_class = false;
    Classification cls;
    try {
      BasisPolytopeResult basis = basis_polytope(p, cert);
      entry["basis_f_vector"] = basis.q.f_vector();
    } catch (const CapacityError& e) {
      entry["basis_f_vector"] = Json{{"skipped", e.what()}};
    }
    try {
      cls = classify_meek_wild(p, cert);
      entry["classification"] = to_json(cls);
      have_class = true;
    } catch (const CapacityError& e) {
      entry["classification"] = Json{{"skipped", e.what()}};
    }
    {
      EquivalenceReport eq = equivalence_report(p, cert.simplex_vertices);
      entry["equivalence"] = Json{{"condition_a", eq.condition_a},
                                  {"condition_b", eq.condition_b},
                                  {"trivial", eq.trivial}};
    }
    if (have_class && cls.kind == MeekWildKind::Wild && p.dim() >= 3) {
      try {
        BoundCheck bound = fvector_bound_check(p, cert);
        entry["bound_check"] = Json{{"f_wild", bound.f_wild},
                                    {"f_meek", bound.f_meek},
                                    {"comparisons", bound.comparisons},
                                    {"pass", bound.pass}};
      } catch (const CapacityError& e) {
        entry["bound_check"] = Json{{"skipped", e.what()}};
      }
    }
    try {
      JoinStructureReport join = join_structure_check(p, cert);
      entry["join_check"] = Json{{"passes", join.passes},
                                 {"polytope_cells", join.polytope_cells},
                                 {"subcomplex_cells", join.subcomplex_cells}};
    } catch (const CapacityError& e) {
      entry["join_check"] = Json{{"skipped", e.what()}};
    }
    certs.push_back(entry);
  }
  rep["certificates"] = certs;
  return rep;
}

void render_analysis(const Json& rep, std::ostream& os) {
  os << rep["input"].get<std::string>() << ": dim " << rep["dim"]
     << ", f = " << fvec_text(rep["f_vector"]) << "\n";
  if (rep["polytope_is_simplex"].get<bool>())
    os << "the polytope is itself a simplex; no proper designation exists\n";
  const Json& certs = rep["certificates"];
  os << certs.size() << " special simplex certificate(s)\n";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const Json& e = certs[i];
    os << "#" << i << " simplex " << indices_text(e["certificate"]["simplex"])
       << " m=" << e["certificate"]["m"];
    if (e["basis_f_vector"].is_array())
      os << " | basis f=" << fvec_text(e["basis_f_vector"]);
    else
      os << " | basis skipped";
    if (e["classification"].is_object() && e["classification"].contains("kind"))
      os << " | " << e["classification"]["kind"].get<std::string>();
    else
      os << " | classification skipped";
    os << " | equivalence a=" << e["equivalence"]["condition_a"]
       << " b=" << e["equivalence"]["condition_b"];
    if (e.contains("bound_check")) {
      if (e["bound_check"].contains("pass"))
        os << " | bound " << (e["bound_check"]["pass"].get<bool>() ? "pass" : "FAIL");
      else
        os << " | bound skipped";
    }
    if (e["join_check"].contains("passes"))
      os << " | join " << (e["join_check"]["passes"].get<bool>() ? "pass" : "FAIL");
    else
      os << " | join skipped";
    os << "\n";
  }
}

int run_analyze(const std::string& path, bool json_mode) {
  Polytope p = load_polytope(path);
  Json rep = analysis_report(p);
  if (json_mode) {
    std::cout << dump_json(rep);
    render_analysis(rep, std::cerr);
  } else {
    render_analysis(rep, std::cout);
  }
  return rep["certificates"].empty() ? kNoCertificates : kOk;
}

// -------------------------------------------------------------- triangulate

int run_triangulate(const std::string& path, const std::string& ordering_text,
                    bool json_mode) {
  Polytope p = load_polytope(path);
  std::vector<std::size_t> ordering;
  if (ordering_text.empty()) {
    for (std::size_t i = 0; i < p.vertex_count(); ++i) ordering.push_back(i);
  } else {
    std::istringstream in(ordering_text);
    std::string token;
    while (std::getline(in, token, ',')) {
      try {
        ordering.push_back(std::stoul(token));
      } catch (const std::exception&) {
        throw std::invalid_argument("ordering must be comma-separated vertex indices");
      }
    }
  }
  Triangulation t = rlt(p, ordering);
  Json out = to_json(t);
  std::ostream& human = json_mode ? std::cerr : std::cout;
  if (json_mode) std::cout << dump_json(out);
  human << p.name() << ": " << t.cells.size() << " cells, volume "
        << rat_to_string(triangulation_volume(t)) << "\n";
  if (!json_mode)
    for (const Json& cell : out["cells"]) human << "  " << indices_text(cell) << "\n";
  return kOk;
}

// ------------------------------------------------------------- check-bounds

int run_check_bounds(const std::string& path, bool json_mode) {
  Polytope p = load_polytope(path);
  SpecialSimplexSearch search = find_special_simplices(p);
  Json rep;
  rep["input"] = p.name();
  Json checks = Json::array();
  std::size_t bounds_run = 0;
  for (const SpecialSimplexCertificate& cert : search.certificates) {
    Json entry;
    entry["certificate"] = to_json(cert);
    try {
      Classification cls = classify_meek_wild(p, cert);
      entry["classification"] = to_json(cls);
      if (cls.kind == MeekWildKind::Wild && p.dim() >= 3) {
        BoundCheck bound = fvector_bound_check(p, cert);
        entry["bound"] = Json{{"f_wild", bound.f_wild},
                              {"f_meek", bound.f_meek},
                              {"comparisons", bound.comparisons},
                              {"pass", bound.pass}};
        ++bounds_run;
      }
    } catch (const CapacityError& e) {
      entry["skipped"] = e.what();
    }
    checks.push_back(entry);
  }
  rep["checks"] = checks;
  std::ostream& human = json_mode ? std::cerr : std::cout;
  if (json_mode) std::cout << dump_json(rep);
  human << rep["input"].get<std::string>() << ": " << checks.size()
        << " certificate(s), " << bounds_run << " bound check(s)\n";
  for (const Json& e : checks) {
    human << "  simplex " << indices_text(e["certificate"]["simplex"]);
    if (e.contains("classification") && e["classification"].contains("kind"))
      human << " " << e["classification"]["kind"].get<std::string>();
    if (e.contains("bound"))
      human << " bound " << (e["bound"]["pass"].get<bool>() ? "pass" : "FAIL")
            << " f=" << fvec_text(e["bound"]["f_wild"]) << " vs "
            << fvec_text(e["bound"]["f_meek"]);
    if (e.contains("skipped")) human << " skipped: " << e["skipped"].get<std::string>();
    human << "\n";
  }
  return bounds_run > 0 ? kOk : kNoCertificates;
}

// --------------------------------------------------------- enumerate-wild2d

int run_wild2d(int m, int k, const std::string& out_dir, bool json_mode) {
  if (m < 4 || m > 10) throw UsageError("--m must lie in [4,10]");
  if (k < 1 || k > 3) throw UsageError("--k must lie in [1,3]");
  Wild2DEnumeration found = enumerate_wild_2d(m, k);

  std::filesystem::create_directories(out_dir);
  Json results = Json::array();
  for (std::size_t i = 0; i < found.wild.size(); ++i) {
    const WildRealization& r = found.wild[i];
    const std::string file = "wild2d_m" + std::to_string(m) + "k" +
                             std::to_string(k) + "_" + std::to_string(i) +
                             ".json";
    const std::filesystem::path path = std::filesystem::path(out_dir) / file;
    write_json_file(path.string(), to_json(r.polytope));
    Json entry;
    entry["file"] = file;
    entry["f_vector"] = r.polytope.f_vector();
    entry["blueprint"] = to_json(r.blueprint);
    results.push_back(entry);
  }
  Json rep;
  rep["m"] = m;
  rep["k"] = k;
  rep["systems_tried"] = found.systems_tried;
  rep["realized"] = found.realized;
  rep["duplicates"] = found.duplicates;
  rep["rejected"] = found.rejected.size();
  rep["isomorphism_classes"] = found.wild.size();
  rep["results"] = results;

  std::ostream& human = json_mode ? std::cerr : std::cout;
  if (json_mode) std::cout << dump_json(rep);
  human << "wild(" << m << "," << k << "): " << found.systems_tried
        << " systems, " << found.realized << " wild realizations, "
        << found.wild.size() << " isomorphism class(es), "
        << found.rejected.size() << " rejected, " << found.duplicates
        << " duplicates\n";
  for (const Json& e : results)
    human << "  " << e["file"].get<std::string>() << " f="
          << fvec_text(e["f_vector"]) << "\n";
  return found.wild.empty() ? kNoCertificates : kOk;
}

// ----------------------------------------------------------------- generate

void emit_polytope(const Polytope& p) { std::cout << dump_json(to_json(p)); }

int run_generate(const std::string& kind, int n, int m, int k,
                 const std::string& q_spec, const std::string& base_spec,
                 const std::string& a_spec, const std::string& b_spec,
                 const std::string& poset_path, std::uint64_t seed,
                 const std::string& out_dir, bool json_mode) {
  auto need = [&](bool have, const char* what) {
    if (!have) throw UsageError(std::string("generate ") + kind + " needs " + what);
  };
  try {
    if (kind == "cube" || kind == "cross" || kind == "simplex" ||
        kind == "ngon" || kind == "random-ngon" || kind == "birkhoff" ||
        kind == "cube-basis-zonotope") {
      need(n > 0, "--n");
      if (kind == "cube") emit_polytope(cube(n));
      else if (kind == "cross") emit_polytope(cross(n));
      else if (kind == "simplex") emit_polytope(simplex(n));
      else if (kind == "ngon") emit_polytope(ngon(n));
      else if (kind == "random-ngon") emit_polytope(random_convex_ngon(n, seed));
      else if (kind == "birkhoff") emit_polytope(birkhoff(n).polytope);
      else emit_polytope(cube_basis_zonotope(n).polytope);
      return kOk;
    }
    if (kind == "order") {
      need(!poset_path.empty(), "--poset");
      Poset poset = poset_from_json(parse_json_file(poset_path));
      emit_polytope(order_polytope(poset).polytope);
      return kOk;
    }
    if (kind == "direct-sum") {
      need(!a_spec.empty() && !b_spec.empty(), "--a and --b");
      emit_polytope(direct_sum(polytope_from_spec(a_spec), polytope_from_spec(b_spec)));
      return kOk;
    }
    if (kind == "pyramid" || kind == "bipyramid") {
      need(!base_spec.empty(), "--base");
      Polytope base = polytope_from_spec(base_spec);
      emit_polytope(kind == "pyramid" ? pyramid(base) : bipyramid(base));
      return kOk;
    }
    if (kind == "meek-family") {
      need(!q_spec.empty(), "--q");
      need(m > 0, "--m");
      Polytope q = polytope_from_spec(q_spec);
      std::vector<MeekFamilyMember> family = meek_family(q, m);
      std::filesystem::create_directories(out_dir);
      Json index = Json::array();
      for (const MeekFamilyMember& member : family) {
        const std::string file =
            "meek_family_j" + std::to_string(member.simplex_dim) + ".json";
        const std::filesystem::path path = std::filesystem::path(out_dir) / file;
        write_json_file(path.string(), to_json(member.polytope));
        Json entry;
        entry["file"] = file;
        entry["simplex_dim"] = member.simplex_dim;
        entry["apex_count"] = member.apex_count;
        entry["f_vector"] = member.polytope.f_vector();
        index.push_back(entry);
      }
      std::ostream& human = json_mode ? std::cerr : std::cout;
      if (json_mode) std::cout << dump_json(Json{{"members", index}});
      for (const Json& e : index)
        human << "wrote " << e["file"].get<std::string>() << " f="
              << fvec_text(e["f_vector"]) << "\n";
      return kOk;
    }
    if (kind == "wild2d") {
      need(m > 0, "--m");
      need(k > 0, "--k");
      return run_wild2d(m, k, out_dir, json_mode);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const CapacityError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown generator kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation on polytopes with special simplices"};
  app.require_subcommand(1);

  bool json_mode = false;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  app.add_flag("--json", json_mode, "JSON on stdout, readable tables on stderr");
  app.add_option("--seed", seed, "seed for randomized generators");
  app.add_option("--out-dir", out_dir, "directory for multi-file output");

  auto* cmd_analyze = app.add_subcommand("analyze", "certify special simplices and run the full pipeline");
  std::string analyze_path = "-";
  cmd_analyze->add_option("input", analyze_path, "polytope JSON file, - for stdin");

  auto* cmd_generate = app.add_subcommand("generate", "emit a generated polytope as JSON");
  std::string kind;
  int gen_n = 0, gen_m = 0, gen_k = 0;
  std::string q_spec, base_spec, a_spec, b_spec, poset_path;
  cmd_generate->add_option("kind", kind, "cube|cross|simplex|ngon|random-ngon|birkhoff|order|cube-basis-zonotope|direct-sum|pyramid|bipyramid|meek-family|wild2d")->required();
  cmd_generate->add_option("--n", gen_n, "size parameter");
  cmd_generate->add_option("--m", gen_m, "simplex budget / polygon size");
  cmd_generate->add_option("--k", gen_k, "simplex dimension");
  cmd_generate->add_option("--q", q_spec, "basis polytope (builtin spec or JSON file)");
  cmd_generate->add_option("--base", base_spec, "base polytope (builtin spec or JSON file)");
  cmd_generate->add_option("--a", a_spec, "first summand");
  cmd_generate->add_option("--b", b_spec, "second summand");
  cmd_generate->add_option("--poset", poset_path, "poset JSON file");

  auto* cmd_triangulate = app.add_subcommand("triangulate", "pulling triangulation of a polytope");
  std::string tri_path = "-";
  std::string ordering_text;
  cmd_triangulate->add_option("input", tri_path, "polytope JSON file, - for stdin");
  cmd_triangulate->add_option("--ordering", ordering_text, "comma-separated vertex indices; the last is pulled first");

  auto* cmd_wild = app.add_subcommand("enumerate-wild2d", "enumerate wild polytopes over a polygon basis");
  int wild_m = 0, wild_k = 0;
  cmd_wild->add_option("--m", wild_m, "polygon size, 4..10")->required();
  cmd_wild->add_option("--k", wild_k, "simplex dimension, 1..3")->required();

  auto* cmd_bounds = app.add_subcommand("check-bounds", "face-count bound for wild certificates");
  std::string bounds_path = "-";
  cmd_bounds->add_option("input", bounds_path, "polytope JSON file, - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cmd_analyze->parsed()) return run_analyze(analyze_path, json_mode);
    if (cmd_generate->parsed())
      return run_generate(kind, gen_n, gen_m, gen_k, q_spec, base_spec, a_spec,
                          b_spec, poset_path, seed, out_dir, json_mode);
    if (cmd_triangulate->parsed())
      return run_triangulate(tri_path, ordering_text, json_mode);
    if (cmd_wild->parsed()) return run_wild2d(wild_m, wild_k, out_dir, json_mode);
    if (cmd_bounds->parsed()) return run_check_bounds(bounds_path, json_mode);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const specsim::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kInputError;
  } catch (const specsim::InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}
