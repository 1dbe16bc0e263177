#include "ulm/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ulm/errors.hpp"

namespace ulm {

using nlohmann::json;

namespace {

std::uint64_t parse_unsigned(std::string_view tok, std::string_view context) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InvalidInput("bad number '" + std::string(tok) + "' in '" + std::string(context) + "'");
  if (tok.size() > 18) throw InvalidInput("number too large in '" + std::string(context) + "'");
  return std::stoull(std::string(tok));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') out += c;
  return out;
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

ModuleShape shape_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw InvalidInput("shape document must be a JSON object");
    const json& ring = doc.at("ring");
    const std::string kind = ring.at("kind").get<std::string>();
    const json& size = ring.at("p_or_q");
    if (!size.is_number_unsigned()) throw InvalidInput("ring.p_or_q must be a positive integer");
    const std::uint64_t q = size.get<std::uint64_t>();

    std::map<int, int> mult;
    const json& m = doc.at("multiplicities");
    if (!m.is_object()) throw InvalidInput("multiplicities must be an object {\"alpha\": m}");
    for (const auto& [key, value] : m.items()) {
      std::uint64_t alpha = parse_unsigned(key, "multiplicities");
      if (alpha < 1 || alpha > 64) throw InvalidInput("cyclic exponent " + key + " out of range");
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
        throw InvalidInput("multiplicity of alpha=" + key + " must be a non-negative integer");
      if (value.get<std::int64_t>() > 64) throw InvalidInput("multiplicity of alpha=" + key + " too large");
      mult[static_cast<int>(alpha)] = value.get<int>();
    }
    int k = 1;
    for (auto [alpha, count] : mult)
      if (count > 0) k = std::max(k, alpha);

    RingSpec spec = kind == "int"    ? RingSpec::integer_local(q, k)
                    : kind == "poly" ? RingSpec::polynomial_local(q, k)
                                     : throw InvalidInput("ring.kind must be \"int\" or \"poly\", got \"" + kind + "\"");
    return ModuleShape(spec, mult);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed shape document: ") + e.what());
  }
}

json shape_to_json(const ModuleShape& shape) {
  json mult = json::object();
  for (auto [alpha, m] : shape.multiplicities()) mult[std::to_string(alpha)] = m;
  const RingSpec& ring = shape.ring();
  return json{{"ring",
               {{"kind", ring.backend() == Backend::IntegerLocal ? "int" : "poly"},
                {"p_or_q", ring.residue_field_size()}}},
              {"multiplicities", mult}};
}

ModuleShape read_shape_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open shape file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidInput("shape file " + path.string() + " is not valid JSON: " + e.what());
  }
  return shape_from_json(doc);
}

void write_shape_file(const std::filesystem::path& path, const ModuleShape& shape) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << shape_to_json(shape).dump(2) << "\n";
}

json scalar_to_json(const RingSpec& ring, Scalar x, int alpha) {
  if (ring.backend() == Backend::IntegerLocal) return x.code;
  json coeffs = json::array();
  auto digits = ring.digits(x);
  for (int i = 0; i < alpha; ++i) coeffs.push_back(digits[i]);
  return coeffs;
}

Scalar scalar_from_json(const RingSpec& ring, const json& value, int alpha) {
  const std::uint64_t q = ring.residue_field_size();
  if (ring.backend() == Backend::IntegerLocal) {
    if (!value.is_number_unsigned()) throw InvalidInput("integer scalar expected, got " + value.dump());
    std::uint64_t c = value.get<std::uint64_t>();
    if (c >= ring.power_of_q(alpha))
      throw InvalidInput("scalar " + std::to_string(c) + " not reduced mod p^" + std::to_string(alpha));
    return Scalar{c};
  }
  if (!value.is_array()) throw InvalidInput("coefficient list expected, got " + value.dump());
  if (value.size() > static_cast<std::size_t>(alpha))
    throw InvalidInput("polynomial scalar " + value.dump() + " has degree >= " + std::to_string(alpha));
  std::vector<std::uint64_t> digits(ring.precision(), 0);
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number_unsigned() || value[i].get<std::uint64_t>() >= q)
      throw InvalidInput("coefficient " + value[i].dump() + " is not in F_" + std::to_string(q));
    digits[i] = value[i].get<std::uint64_t>();
  }
  return ring.from_digits(digits);
}

json element_to_json(const ModuleShape& shape, const Element& a) {
  shape.validate(a);
  json coords = json::array();
  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    if (a.coords[f].code == 0) continue;
    const Factor& fac = shape.factors()[f];
    coords.push_back(json::array({fac.alpha, fac.index, scalar_to_json(shape.ring(), a.coords[f], fac.alpha)}));
  }
  return json{{"coords", coords}};
}

Element element_from_json(const ModuleShape& shape, const json& doc) {
  try {
    Element a = shape.zero();
    for (const json& entry : doc.at("coords")) {
      if (!entry.is_array() || entry.size() != 3) throw InvalidInput("coordinate entries are [alpha, index, scalar]");
      const int alpha = entry[0].get<int>(), index = entry[1].get<int>();
      auto it = std::find_if(shape.factors().begin(), shape.factors().end(),
                             [&](const Factor& f) { return f.alpha == alpha && f.index == index; });
      if (it == shape.factors().end())
        throw InvalidInput("no cyclic factor (alpha=" + std::to_string(alpha) + ", index=" + std::to_string(index) + ")");
      a.coords[it - shape.factors().begin()] = scalar_from_json(shape.ring(), entry[2], alpha);
    }
    return a;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed element: ") + e.what());
  }
}

json hom_to_json(const HomTable& phi) {
  json images = json::array();
  for (std::size_t f = 0; f < phi.source().factor_count(); ++f) {
    const Factor& fac = phi.source().factors()[f];
    images.push_back({{"generator", {fac.alpha, fac.index}}, {"image", element_to_json(phi.target(), phi.images()[f])}});
  }
  return json{{"source", shape_to_json(phi.source())},
              {"target", shape_to_json(phi.target())},
              {"images", images},
              {"is_automorphism", phi.is_automorphism()}};
}

json form_to_json(const SubmoduleForm& form) {
  json rows = json::array();
  for (const auto& row : form.rows()) {
    json r = json::array();
    for (Scalar x : row) r.push_back(form.ring().format(x));
    rows.push_back(r);
  }
  return rows;
}

json table_to_json(const HeightTable& table) {
  json levels = json::array();
  for (const auto& level : table.levels) levels.push_back(form_to_json(level));
  return levels;
}

Element parse_element(const ModuleShape& shape, std::string_view text) {
  const std::string s = strip(text);
  std::vector<std::string> toks = s.empty() || (shape.is_zero() && s == "0") ? std::vector<std::string>{} : split(s, ',');
  const RingSpec& ring = shape.ring();
  const bool poly = ring.backend() == Backend::PolynomialLocal;
  std::size_t want = 0;
  for (const Factor& f : shape.factors()) want += poly ? static_cast<std::size_t>(f.alpha) : 1;
  if (toks.size() != want)
    throw InvalidInput("element '" + std::string(text) + "' needs " + std::to_string(want) + " comma-separated " +
                       (poly ? "coefficients" : "coordinates") + ", got " + std::to_string(toks.size()));
  Element a = shape.zero();
  std::size_t pos = 0;
  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    const int alpha = shape.factor_exponent(f);
    if (!poly) {
      a.coords[f] = scalar_from_json(ring, json(parse_unsigned(toks[pos++], text)), alpha);
      continue;
    }
    json coeffs = json::array();
    for (int i = 0; i < alpha; ++i) coeffs.push_back(parse_unsigned(toks[pos++], text));
    a.coords[f] = scalar_from_json(ring, coeffs, alpha);
  }
  return a;
}

ElementTuple parse_tuple(const ModuleShape& shape, std::string_view text) {
  ElementTuple out;
  for (const std::string& part : split(text, ';')) out.push_back(parse_element(shape, part));
  return out;
}

std::string poset_to_dot(const std::string& name, const std::vector<std::string>& labels, const CoverList& covers) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << "  n" << i << " [label=\"" << escape_dot(labels[i]) << "\"];\n";
  for (auto [lo, hi] : covers) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

json poset_to_json(const std::vector<std::string>& labels, const CoverList& covers) {
  json c = json::array();
  for (auto [lo, hi] : covers) c.push_back({lo, hi});
  return json{{"nodes", labels}, {"covers", c}};
}

}  // namespace ulm
