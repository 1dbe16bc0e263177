#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ulm/errors.hpp"
#include "ulm/io.hpp"
#include "ulm/linear.hpp"
#include "ulm/module.hpp"
#include "ulm/orbits.hpp"
#include "ulm/posets.hpp"
#include "ulm/verify.hpp"

using nlohmann::json;
using namespace ulm;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kBoundExceeded = 3 };

std::uint64_t default_bound() {
  const char* env = std::getenv("ULM_ORBITS_BOUND");
  if (!env || !*env) return kDefaultBound;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("ULM_ORBITS_BOUND must be a positive integer, got '") + env + "'");
  }
}

// Non-prime residue fields depend on the chosen modulus, so outputs name it.
std::string field_note(const ModuleShape& shape) {
  const RingSpec& ring = shape.ring();
  if (ring.backend() != Backend::PolynomialLocal || ring.field_degree() == 1) return "";
  const auto& g = ring.field_modulus();
  std::string poly;
  for (std::size_t i = g.size(); i-- > 0;) {
    if (g[i] == 0) continue;
    if (!poly.empty()) poly += "+";
    if (g[i] != 1 || i == 0) poly += std::to_string(g[i]);
    if (i >= 1) poly += "x";
    if (i >= 2) poly += "^" + std::to_string(i);
  }
  return "F_" + std::to_string(ring.residue_field_size()) + " = F_" + std::to_string(ring.characteristic()) +
         "[x]/(" + poly + ")";
}

json tuple_json(const ModuleShape& shape, const ElementTuple& t) {
  json out = json::array();
  for (const Element& a : t) out.push_back(element_to_json(shape, a));
  return out;
}

// Reports r together with h(sum r_i a_i) and h(sum r_i b_i).
json obstruction_json(const ModuleShape& shape, const HeightObstruction& w, const ElementTuple& a,
                      const ElementTuple& b) {
  json coeffs = json::array();
  for (Scalar c : w.coefficients) coeffs.push_back(shape.ring().format(c));
  return json{{"level", w.height},
              {"coefficients", coeffs},
              {"height_a", to_string(height(shape, linear_combination(shape, a, w.coefficients)))},
              {"height_b", to_string(height(shape, linear_combination(shape, b, w.coefficients)))}};
}

std::string obstruction_text(const ModuleShape& shape, const HeightObstruction& w, const ElementTuple& a,
                             const ElementTuple& b) {
  std::string out = "r = (";
  for (std::size_t i = 0; i < w.coefficients.size(); ++i) {
    if (i) out += ",";
    out += shape.ring().format(w.coefficients[i]);
  }
  return out + "): h(r.a) = " + to_string(height(shape, linear_combination(shape, a, w.coefficients))) +
         ", h(r.b) = " + to_string(height(shape, linear_combination(shape, b, w.coefficients)));
}

struct Common {
  std::string shape_file;
  bool as_json = false;
  std::uint64_t bound = 0;
};

void add_common(CLI::App* cmd, Common& c, bool json_flag = true) {
  cmd->add_option("--shape", c.shape_file, "Shape document (JSON)")->required();
  if (json_flag) cmd->add_flag("--json", c.as_json, "Emit JSON");
  cmd->add_option("--bound", c.bound, "Enumeration cap (default 2^20 or $ULM_ORBITS_BOUND)");
}

std::uint64_t effective_bound(const Common& c) { return c.bound ? c.bound : default_bound(); }

int cmd_orbits(const Common& c, int n) {
  ModuleShape shape = read_shape_file(c.shape_file);
  auto orbits = enumerate_tuple_orbits(shape, n, effective_bound(c));
  if (c.as_json) {
    json rows = json::array();
    for (const auto& o : orbits) {
      json row{{"representative", tuple_json(shape, o.representative)}, {"size", o.size}};
      if (n == 1) {
        row["ulm_sequence"] = ulm_sequence(shape, o.representative.front()).to_string();
        row["ideal"] = ideal_of(shape, o.representative.front()).to_string();
      } else {
        row["height_table"] = table_to_json(o.fingerprint);
        row["n_invariant"] = n_invariant(o.fingerprint);
      }
      rows.push_back(row);
    }
    json doc{{"shape", shape_to_json(shape)}, {"n", n}, {"orbits", rows}};
    if (auto note = field_note(shape); !note.empty()) doc["field"] = note;
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "# " << to_string(shape) << ", n=" << n << ", " << orbits.size() << " orbits\n";
  if (auto note = field_note(shape); !note.empty()) std::cout << "# " << note << "\n";
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto& o = orbits[i];
    std::cout << i << "\t" << o.size << "\t" << format_tuple(shape, o.representative);
    if (n == 1)
      std::cout << "\t" << ulm_sequence(shape, o.representative.front()).to_string() << "\t"
                << ideal_of(shape, o.representative.front()).to_string();
    else
      std::cout << "\tN=" << n_invariant(o.fingerprint);
    std::cout << "\n";
  }
  return kOk;
}

int cmd_query(const Common& c, const std::string& kind, const std::string& a_text, const std::string& b_text) {
  ModuleShape shape = read_shape_file(c.shape_file);
  ElementTuple a = parse_tuple(shape, a_text), b = parse_tuple(shape, b_text);
  bool result = false;
  json witness;
  std::string witness_text;

  if (kind == "same-orbit") {
    if (a.size() != b.size()) throw InvalidInput("tuples have different lengths");
    if (auto w = orbit_obstruction(shape, a, b)) {
      witness = json{{"obstruction", obstruction_json(shape, *w, a, b)}};
      witness_text = "obstruction: " + obstruction_text(shape, *w, a, b);
    } else {
      result = true;
      witness = json{{"automorphism", hom_to_json(build_automorphism(shape, a, b))}};
    }
  } else if (kind == "degenerates") {
    if (a.size() != b.size()) throw InvalidInput("tuples have different lengths");
    if (auto w = degeneration_obstruction(shape, a, shape, b)) {
      witness = json{{"obstruction", obstruction_json(shape, *w, a, b)}};
      witness_text = "obstruction: " + obstruction_text(shape, *w, a, b);
    } else {
      result = true;
      witness = json{{"homomorphism", hom_to_json(extend_homomorphism(shape, shape, a, b))}};
    }
  } else {
    auto phi = submodule_automorphism(shape, a, b, effective_bound(c));
    result = phi.has_value();
    if (phi) witness = json{{"automorphism", hom_to_json(*phi)}};
  }

  if (c.as_json) {
    json doc{{"query", kind}, {"result", result}};
    if (!witness.is_null()) doc["witness"] = witness;
    if (auto note = field_note(shape); !note.empty()) doc["field"] = note;
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << (result ? "true" : "false") << "\n";
  if (auto note = field_note(shape); !note.empty()) std::cout << "# " << note << "\n";
  if (!witness_text.empty()) std::cout << witness_text << "\n";
  else if (!witness.is_null()) std::cout << "witness: " << witness.dump() << "\n";
  return kOk;
}

int cmd_poset(const Common& c, const std::string& view, const std::string& dot_file) {
  ModuleShape shape = read_shape_file(c.shape_file);
  const std::uint64_t bound = effective_bound(c);
  std::vector<std::string> labels;
  CoverList covers;
  if (view == "elements") {
    auto p = element_orbit_poset(shape, bound);
    for (const auto& s : p.elements()) labels.push_back(s.to_string());
    covers = p.hasse();
  } else if (view == "Hf") {
    auto p = orbit_poset_elements(shape);
    for (const auto& s : p.elements()) labels.push_back(s.to_string());
    covers = p.hasse();
  } else if (view == "ideals") {
    auto p = enumerate_ideals(build_Pf(shape), bound);
    for (const auto& I : p.elements()) labels.push_back(I.to_string());
    covers = p.hasse();
  } else {
    auto p = build_Pf(shape);
    for (const auto& x : p.elements()) labels.push_back(to_string(x));
    covers = p.hasse();
  }

  std::string dot = poset_to_dot(view, labels, covers);
  if (auto note = field_note(shape); !note.empty()) dot = "// " + note + "\n" + dot;
  if (!dot_file.empty() && dot_file != "-") {
    std::ofstream out(dot_file);
    if (!out) throw InvalidInput("cannot write " + dot_file);
    out << dot;
  }
  if (c.as_json) {
    json doc = poset_to_json(labels, covers);
    doc["view"] = view;
    std::cout << doc.dump(2) << "\n";
  } else if (dot_file.empty() || dot_file == "-") {
    std::cout << dot;
  }
  return kOk;
}

int cmd_dictionary(const Common& c, const std::string& direction, const std::string& input) {
  ModuleShape shape = read_shape_file(c.shape_file);
  std::string result;
  bool round_trip = false;
  if (direction == "kappa") {
    OrderIdeal I = OrderIdeal::generated(build_Pf(shape), parse_pelems(input));
    UlmSequence s = kappa(I);
    result = s.to_string();
    round_trip = is_admissible(shape, s) && ideal_from_sequence(s, shape) == I;
  } else {
    UlmSequence s = UlmSequence::parse(input);
    OrderIdeal I = ideal_from_sequence(s, shape);
    result = I.to_string();
    round_trip = kappa(I) == s;
  }
  if (c.as_json) {
    std::cout << json{{"direction", direction}, {"input", input}, {"result", result}, {"round_trip", round_trip}}.dump(2)
              << "\n";
  } else {
    std::cout << result << "\nround-trip: " << (round_trip ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_verify(const Common& c, int n, std::size_t samples) {
  ModuleShape shape = read_shape_file(c.shape_file);
  VerifyOptions opts;
  opts.n = n;
  opts.bound = effective_bound(c);
  opts.construction_samples = samples;
  auto results = run_verify(shape, opts);
  bool ok = true;
  json rows = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (c.as_json)
      rows.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    else
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
  }
  if (c.as_json)
    std::cout << json{{"shape", shape_to_json(shape)}, {"n", n}, {"passed", ok}, {"suites", rows}}.dump(2) << "\n";
  else
    std::cout << "verify " << (ok ? "passed" : "FAILED") << " for " << to_string(shape) << ", n=" << n << "\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_decompose(const std::vector<std::string>& orders_text, const std::string& out_dir) {
  std::vector<std::uint64_t> orders;
  for (const auto& t : orders_text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty() || t.front() == '-') throw InvalidInput("not a positive integer: '" + t + "'");
    orders.push_back(v);
  }
  auto parts = primary_decomposition(orders);
  if (out_dir.empty()) {
    json doc = json::object();
    for (const auto& [p, shape] : parts) doc[std::to_string(p)] = shape_to_json(shape);
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::filesystem::create_directories(out_dir);
  for (const auto& [p, shape] : parts) {
    auto path = std::filesystem::path(out_dir) / ("shape_p" + std::to_string(p) + ".json");
    write_shape_file(path, shape);
    std::cout << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphism orbits and degenerations of tuples in finite modules over a DVR"};
  app.require_subcommand(1);
  int code = kOk;

  Common orbits_opts;
  int orbits_n = 1;
  auto* orbits = app.add_subcommand("orbits", "List the orbits of n-tuples");
  add_common(orbits, orbits_opts);
  orbits->add_option("-n", orbits_n, "Tuple length")->check(CLI::PositiveNumber);

  Common query_opts;
  std::string query_kind, query_a, query_b;
  auto* query = app.add_subcommand("query", "Same-orbit, degeneration and submodule-orbit queries");
  query->add_option("kind", query_kind, "same-orbit | degenerates | submodule-orbit")
      ->required()
      ->check(CLI::IsMember({"same-orbit", "degenerates", "submodule-orbit"}));
  add_common(query, query_opts);
  query->add_option("--a", query_a, "First tuple (or generators of S), elements separated by ';'")->required();
  query->add_option("--b", query_b, "Second tuple (or generators of T)")->required();

  Common poset_opts;
  std::string poset_view, poset_dot;
  auto* poset = app.add_subcommand("poset", "Hasse diagrams of orbit, ideal and H_f posets");
  poset->add_option("view", poset_view, "elements | ideals | Hf | Pf")
      ->required()
      ->check(CLI::IsMember({"elements", "ideals", "Hf", "Pf"}));
  add_common(poset, poset_opts);
  poset->add_option("--dot", poset_dot, "Write DOT to this file ('-' for stdout)");

  Common dict_opts;
  std::string dict_direction, dict_input;
  auto* dict = app.add_subcommand("dictionary", "Translate between order ideals and Ulm sequences");
  dict->add_option("direction", dict_direction, "kappa (ideal -> sequence) | ideal (sequence -> ideal)")
      ->required()
      ->check(CLI::IsMember({"kappa", "ideal"}));
  add_common(dict, dict_opts);
  dict->add_option("--input", dict_input, "Ideal generators like {(0,2)} or a sequence like 0,1,inf")->required();

  Common verify_opts;
  int verify_n = 1;
  std::size_t verify_samples = 20;
  auto* verify = app.add_subcommand("verify", "Check every criterion against the brute-force oracle");
  add_common(verify, verify_opts);
  verify->add_option("-n", verify_n, "Tuple length")->check(CLI::PositiveNumber);
  verify->add_option("--samples", verify_samples, "Random pairs for the construction suite");

  std::vector<std::string> decompose_orders;
  std::string decompose_dir;
  auto* decompose = app.add_subcommand("decompose", "Split a product of cyclic groups into p-primary shape files");
  decompose->add_option("orders", decompose_orders, "Cyclic orders > 1")->required();
  decompose->add_option("--out-dir", decompose_dir, "Write one shape file per prime here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*orbits) code = cmd_orbits(orbits_opts, orbits_n);
    else if (*query) code = cmd_query(query_opts, query_kind, query_a, query_b);
    else if (*poset) code = cmd_poset(poset_opts, poset_view, poset_dot);
    else if (*dict) code = cmd_dictionary(dict_opts, dict_direction, dict_input);
    else if (*verify) code = cmd_verify(verify_opts, verify_n, verify_samples);
    else if (*decompose) code = cmd_decompose(decompose_orders, decompose_dir);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBoundExceeded;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return code;
}
