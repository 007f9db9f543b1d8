#pragma once

// JSON reading and writing for set functions, nets, tropical specs, graphs
// and vertex sets. Parse failures raise ParseError naming the offending field.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "polytile/certificate.hpp"
#include "polytile/chipfire.hpp"
#include "polytile/linked_net.hpp"
#include "polytile/setfn.hpp"

namespace polytile {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t as_size(const Json& j, const std::string& where) {
  auto v = as_int(j, where);
  if (v < 0) throw ParseError(where + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}

inline std::vector<std::int64_t> int_vector(const Json& j, const std::string& where) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i)
    out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::string scalar_text(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw ParseError(where + ": expected a scalar string or integer");
}

}  // namespace detail

// Set functions -------------------------------------------------------------

inline Json to_json(const SetFn& f) { return {{"ground_set", f.ground_set()}, {"values", f.values()}}; }

inline SetFn setfn_from_json(const Json& j) {
  const auto& gs = detail::as_array(detail::require(j, "ground_set", "setfn"), "setfn.ground_set");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!gs[i].is_string()) throw ParseError("setfn.ground_set[" + std::to_string(i) + "]: expected a string");
    labels.push_back(gs[i].get<std::string>());
  }
  auto values = detail::int_vector(detail::require(j, "values", "setfn"), "setfn.values");
  return SetFn(std::move(labels), std::move(values));
}

// Fields --------------------------------------------------------------------

struct FieldSpec {
  bool prime = false;
  std::uint64_t p = PrimeField::kDefaultPrime;

  [[nodiscard]] Json to_json() const {
    if (!prime) return {{"kind", "rational"}};
    return {{"kind", "prime"}, {"p", p}};
  }
};

inline FieldSpec field_spec_from_json(const Json& j) {
  const auto& kind = detail::require(j, "kind", "field");
  if (kind == "rational") return {};
  if (kind == "prime") {
    FieldSpec f{true, PrimeField::kDefaultPrime};
    if (j.contains("p")) f.p = detail::as_size(j["p"], "field.p");
    PrimeField check(f.p);
    return f;
  }
  throw ParseError("field.kind: expected \"rational\" or \"prime\"");
}

/// "rational", "prime" or "prime:<p>".
inline FieldSpec field_spec_from_string(const std::string& s) {
  if (s == "rational" || s == "Q") return {};
  if (s == "prime") return {true, PrimeField::kDefaultPrime};
  if (s.rfind("prime:", 0) == 0) {
    try {
      FieldSpec f{true, std::stoull(s.substr(6))};
      PrimeField check(f.p);
      return f;
    } catch (const std::logic_error&) {
      throw InputError("bad prime in field '" + s + "'");
    }
  }
  throw InputError("unknown field '" + s + "'");
}

inline FieldSpec field_spec_of(const RationalField&) { return {}; }
inline FieldSpec field_spec_of(const PrimeField& f) { return {true, f.modulus()}; }

// Nets ----------------------------------------------------------------------

inline FieldSpec net_field_spec(const Json& j) {
  if (!j.contains("field")) return {};
  return field_spec_from_json(j["field"]);
}

template <ExactField F>
NetPresentation<F> net_from_json(const Json& j, const F& field) {
  NetPresentation<F> net{field, 0, 0, {}, {}, {}};
  net.types = detail::as_size(detail::require(j, "arrow_types", "net"), "net.arrow_types");
  net.dim = detail::as_size(detail::require(j, "dimension", "net"), "net.dimension");
  const auto& vs = detail::as_array(detail::require(j, "vertices", "net"), "net.vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto where = "net.vertices[" + std::to_string(i) + "]";
    const auto& id = detail::require(vs[i], "id", where);
    if (!id.is_string()) throw ParseError(where + ".id: expected a string");
    net.ids.push_back(id.get<std::string>());
    net.vertices.push_back(detail::int_vector(detail::require(vs[i], "coords", where), where + ".coords"));
  }
  const std::size_t h = net.ids.size();
  if (h == 0) throw ParseError("net.vertices: empty");
  if (h > kMaxGroundSet) throw LimitError("net has more than 20 vertices");
  if (net.dim == 0) throw ParseError("net.dimension: must be positive");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < h; ++i)
    if (!index.emplace(net.ids[i], i).second) throw ParseError("net.vertices: duplicate id '" + net.ids[i] + "'");
  std::vector<std::vector<std::optional<MatrixOf<F>>>> seen(h, std::vector<std::optional<MatrixOf<F>>>(h));
  const auto& maps = detail::as_array(detail::require(j, "maps", "net"), "net.maps");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    auto where = "net.maps[" + std::to_string(k) + "]";
    auto lookup = [&](const char* key) {
      const auto& x = detail::require(maps[k], key, where);
      if (!x.is_string()) throw ParseError(where + "." + key + ": expected a vertex id");
      auto it = index.find(x.get<std::string>());
      if (it == index.end()) throw ParseError(where + "." + key + ": unknown vertex id '" + x.get<std::string>() + "'");
      return it->second;
    };
    auto from = lookup("from");
    auto to = lookup("to");
    const auto& rows = detail::as_array(detail::require(maps[k], "matrix", where), where + ".matrix");
    if (rows.size() != net.dim) throw ParseError(where + ".matrix: expected " + std::to_string(net.dim) + " rows");
    MatrixOf<F> m(net.dim, net.dim, field.zero());
    for (std::size_t r = 0; r < net.dim; ++r) {
      auto rw = where + ".matrix[" + std::to_string(r) + "]";
      const auto& row = detail::as_array(rows[r], rw);
      if (row.size() != net.dim) throw ParseError(rw + ": expected " + std::to_string(net.dim) + " entries");
      for (std::size_t c = 0; c < net.dim; ++c) {
        auto cw = rw + "[" + std::to_string(c) + "]";
        try {
          m(r, c) = field.parse(detail::scalar_text(row[c], cw));
        } catch (const ParseError& e) {
          throw ParseError(cw + ": " + e.what());
        }
      }
    }
    if (seen[from][to]) throw ParseError(where + ": map " + net.ids[from] + " -> " + net.ids[to] + " given twice");
    seen[from][to] = std::move(m);
  }
  net.maps.assign(h, std::vector<MatrixOf<F>>(h));
  for (std::size_t v = 0; v < h; ++v)
    for (std::size_t u = 0; u < h; ++u) {
      if (seen[v][u]) net.maps[v][u] = std::move(*seen[v][u]);
      else if (u == v) net.maps[v][u] = identity(field, net.dim);
      else throw ParseError("net.maps: missing map " + net.ids[v] + " -> " + net.ids[u]);
    }
  net.validate();
  return net;
}

template <ExactField F>
Json to_json(const NetPresentation<F>& net) {
  Json out;
  out["arrow_types"] = net.types;
  out["dimension"] = net.dim;
  out["field"] = field_spec_of(net.field).to_json();
  Json vs = Json::array();
  for (std::size_t i = 0; i < net.size(); ++i) vs.push_back({{"id", net.ids[i]}, {"coords", net.vertices[i]}});
  out["vertices"] = std::move(vs);
  Json maps = Json::array();
  for (std::size_t v = 0; v < net.size(); ++v)
    for (std::size_t u = 0; u < net.size(); ++u)
      if (u != v)
        maps.push_back({{"from", net.ids[v]}, {"to", net.ids[u]}, {"matrix", json_matrix(net.field, net.map(v, u))}});
  out["maps"] = std::move(maps);
  return out;
}

// Tropical specs ------------------------------------------------------------

inline TropicalSpec tropical_from_json(const Json& j) {
  TropicalSpec spec;
  spec.types = detail::as_size(detail::require(j, "arrow_types", "trop"), "trop.arrow_types");
  const auto& forms = detail::as_array(detail::require(j, "forms", "trop"), "trop.forms");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    auto where = "trop.forms[" + std::to_string(i) + "]";
    const auto& offs = detail::as_array(detail::require(forms[i], "offsets", where), where + ".offsets");
    TropicalForm f;
    for (std::size_t k = 0; k < offs.size(); ++k) {
      if (offs[k].is_null()) f.offsets.emplace_back();
      else f.offsets.emplace_back(detail::as_int(offs[k], where + ".offsets[" + std::to_string(k) + "]"));
    }
    spec.forms.push_back(std::move(f));
  }
  spec.validate();
  return spec;
}

inline Json to_json(const TropicalSpec& spec) {
  Json forms = Json::array();
  for (const auto& f : spec.forms) {
    Json offs = Json::array();
    for (const auto& o : f.offsets) offs.push_back(o ? Json(*o) : Json(nullptr));
    forms.push_back({{"offsets", offs}});
  }
  return {{"arrow_types", spec.types}, {"forms", forms}};
}

// Graphs --------------------------------------------------------------------

inline Graph graph_from_json(const Json& j) {
  auto n = detail::as_size(detail::require(j, "vertices", "graph"), "graph.vertices");
  const auto& es = detail::as_array(detail::require(j, "edges", "graph"), "graph.edges");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto where = "graph.edges[" + std::to_string(i) + "]";
    const auto& e = detail::as_array(es[i], where);
    if (e.size() != 2) throw ParseError(where + ": expected a pair");
    edges.emplace_back(detail::as_size(e[0], where + "[0]"), detail::as_size(e[1], where + "[1]"));
  }
  return Graph(n, std::move(edges));
}

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"vertices", g.vertices()}, {"edges", edges}};
}

/// "2,0,-1" -> {2, 0, -1}
inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && item[used] == ' ') ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError("malformed integer '" + item + "' in list '" + s + "'");
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

// Vertex sets ---------------------------------------------------------------

inline VertexSet vertex_set_from_json(const Json& j) {
  VertexSet out;
  const auto& arr = detail::as_array(j, "vertex set");
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(detail::int_vector(arr[i], "vertex set[" + std::to_string(i) + "]"));
  return out;
}

inline Json to_json(const VertexSet& h) {
  Json out = Json::array();
  for (const auto& v : h) out.push_back(v);
  return out;
}

}  // namespace polytile
