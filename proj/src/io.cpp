#include "jordan/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jordan/error.hpp"

namespace jordan {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field_of(const json& obj, const char* key) {
  if (!obj.is_object()) parse_fail("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t index_of(const json& v, const char* key) {
  const json& x = field_of(v, key);
  if (!x.is_number_integer() || x.get<long long>() < 0) parse_fail(std::string("'") + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(x.get<long long>());
}

const std::string& string_of(const json& v, const char* key) {
  const json& x = field_of(v, key);
  if (!x.is_string()) parse_fail(std::string("'") + key + "' must be a string");
  return x.get_ref<const std::string&>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

Field field_from(const json& f) {
  const std::string& type = string_of(f, "type");
  if (type == "rational") return Field::rational();
  if (type == "prime") {
    const json& p = field_of(f, "p");
    if (!p.is_number_integer() || p.get<long long>() < 2 || p.get<long long>() > 0x7fffffffLL) {
      throw Error(ErrorCode::NonPrimeModulus, "field modulus must be a prime below 2^31");
    }
    return Field::prime(static_cast<std::uint32_t>(p.get<long long>()));
  }
  parse_fail("unknown field type '" + type + "'");
}

AlgebraPtr algebra_from(const json& j) {
  std::string name = string_of(j, "name");
  const Field field = field_from(field_of(j, "field"));
  const std::size_t dim = index_of(j, "dim");
  const json& basis_json = field_of(j, "basis");
  if (!basis_json.is_array()) parse_fail("'basis' must be an array");
  std::vector<std::string> basis;
  for (const auto& b : basis_json) {
    if (!b.is_string()) parse_fail("basis names must be strings");
    basis.push_back(b.get<std::string>());
  }
  if (basis.size() != dim) {
    parse_fail("'dim' is " + std::to_string(dim) + " but " + std::to_string(basis.size()) + " basis names given");
  }
  const json& products_json = field_of(j, "products");
  if (!products_json.is_array()) parse_fail("'products' must be an array");
  std::vector<ProductEntry> products;
  for (const auto& e : products_json) {
    products.push_back({index_of(e, "i"), index_of(e, "j"), index_of(e, "k"), field.parse(string_of(e, "c"))});
  }
  return Algebra::create(std::move(name), field, std::move(basis), products);
}

json algebra_json(const Algebra& a) {
  json j;
  j["name"] = a.name();
  if (a.field().is_rational()) {
    j["field"] = {{"type", "rational"}};
  } else {
    j["field"] = {{"type", "prime"}, {"p", a.field().modulus()}};
  }
  j["dim"] = a.dim();
  j["basis"] = a.basis_names();
  j["products"] = json::array();
  for (const auto& e : a.products()) {
    j["products"].push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"c", e.c.to_string()}});
  }
  return j;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_fail("cannot write '" + path.string() + "'");
  out << text;
  if (!out) parse_fail("failed writing '" + path.string() + "'");
}

AlgebraPtr resolve_algebra(const json& j, const char* key, const AlgebraPtr& given, const std::filesystem::path& base) {
  auto it = j.find(key);
  AlgebraPtr named;
  if (it != j.end()) {
    if (it->is_string()) {
      named = load_algebra(base / it->get<std::string>());
    } else {
      named = algebra_from(*it);
    }
  }
  if (given) {
    if (named) require_same_algebra(*given, *named);
    return given;
  }
  if (!named) parse_fail(std::string("map file has no '") + key + "'");
  return named;
}

[[noreturn]] void table_fail(const std::string& what) { throw Error(ErrorCode::InvalidMapTable, what); }

}  // namespace

AlgebraPtr algebra_from_json(std::string_view text) { return algebra_from(parse_json(text)); }

std::string algebra_to_json(const Algebra& a) { return algebra_json(a).dump(2) + "\n"; }

AlgebraPtr load_algebra(const std::filesystem::path& path) { return algebra_from_json(read_file(path)); }

void save_algebra(const Algebra& a, const std::filesystem::path& path) { write_file(path, algebra_to_json(a)); }

MapTable map_from_json(std::string_view text, MapRole role, const AlgebraPtr& domain, const AlgebraPtr& codomain,
                       const std::filesystem::path& base_dir) {
  const json j = parse_json(text);
  if (!j.is_object()) parse_fail("map file must be a JSON object");
  const AlgebraPtr dom = resolve_algebra(j, "domain", domain, base_dir);
  const AlgebraPtr cod = resolve_algebra(j, "codomain", role == MapRole::derivation && !codomain ? dom : codomain,
                                         base_dir);
  if (role == MapRole::derivation) require_same_algebra(*dom, *cod);
  if (dom->field() != cod->field()) throw Error(ErrorCode::FieldMismatch, "domain and codomain fields differ");

  std::optional<Matrix> matrix;
  if (auto it = j.find("matrix"); it != j.end()) {
    if (!it->is_array() || it->size() != cod->dim()) table_fail("'matrix' must have one row per codomain basis vector");
    Matrix m(dom->field(), cod->dim(), dom->dim());
    for (std::size_t r = 0; r < cod->dim(); ++r) {
      const json& row = (*it)[r];
      if (!row.is_array() || row.size() != dom->dim()) table_fail("'matrix' rows must have one entry per domain basis vector");
      for (std::size_t c = 0; c < dom->dim(); ++c) {
        if (!row[c].is_string()) parse_fail("matrix entries must be scalar strings");
        m(r, c) = dom->field().parse(row[c].get<std::string>());
      }
    }
    matrix = std::move(m);
  }

  std::vector<std::pair<Element, Element>> entries;
  if (auto it = j.find("entries"); it != j.end()) {
    if (!it->is_array()) parse_fail("'entries' must be an array");
    for (const auto& e : *it) {
      entries.emplace_back(dom->parse_element(string_of(e, "in")), cod->parse_element(string_of(e, "out")));
    }
  }

  MapTable result = [&] {
    if (!dom->carrier_size()) {
      if (!matrix) table_fail("maps over an infinite field need a 'matrix'");
      for (const auto& [x, y] : entries) {
        if (cod->element(matrix->apply(x.coords())) != y) {
          table_fail("entry " + x.to_string() + " -> " + y.to_string() + " disagrees with the matrix");
        }
      }
      return MapTable::linear(dom, cod, *matrix);
    }
    auto dc = make_carrier(dom);
    auto cc = dom == cod ? dc : make_carrier(cod);
    constexpr CarrierIndex kUnset = ~CarrierIndex{0};
    std::vector<CarrierIndex> images(dc->size(), kUnset);
    if (entries.empty() && matrix) return MapTable::linear(dom, cod, *matrix);
    for (const auto& [x, y] : entries) {
      CarrierIndex& slot = images[dc->encode(x)];
      if (slot != kUnset) table_fail("duplicate entry for " + x.to_string());
      slot = cc->encode(y);
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] == kUnset) {
        table_fail("map is not total: no entry for " + dc->decode(static_cast<CarrierIndex>(i)).to_string());
      }
    }
    return MapTable::from_table(dc, cc, std::move(images), matrix);
  }();

  if (role == MapRole::map) {
    bool bijective = false;
    try {
      bijective = is_bijective(result);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CarrierSizeMismatch) throw;
    }
    if (!bijective) table_fail("map is not a bijection");
  }
  return result;
}

std::string map_to_json(const MapTable& m) {
  json j;
  j["domain"] = algebra_json(*m.domain());
  j["codomain"] = algebra_json(*m.codomain());
  j["entries"] = json::array();
  if (m.is_finite()) {
    const FiniteCarrier& dc = m.domain_carrier();
    const FiniteCarrier& cc = m.codomain_carrier();
    for (std::size_t x = 0; x < dc.size(); ++x) {
      const auto xi = static_cast<CarrierIndex>(x);
      j["entries"].push_back({{"in", dc.decode(xi).to_string()}, {"out", cc.decode(m(xi)).to_string()}});
    }
  }
  if (m.linear_hint()) {
    json rows = json::array();
    const Matrix& mat = *m.linear_hint();
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c).to_string());
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

MapTable load_map(const std::filesystem::path& path, MapRole role, const AlgebraPtr& domain,
                  const AlgebraPtr& codomain) {
  return map_from_json(read_file(path), role, domain, codomain, path.parent_path());
}

void save_map(const MapTable& m, const std::filesystem::path& path) { write_file(path, map_to_json(m)); }

}  // namespace jordan
