#pragma once

// Finite presentations of exact finitely generated linked nets: the vertex
// set H of a Z^n-quiver and one (r+1)x(r+1) matrix M^v_u per ordered pair,
// standing for the map along the minimal admissible path v -> u. Matrices act
// on column vectors; M^v_w M^u_v is the composite u -> v -> w.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "polytile/certificate.hpp"
#include "polytile/quiver.hpp"
#include "polytile/setfn.hpp"
#include "polytile/subspace.hpp"
#include "polytile/subspace_polytopes.hpp"

namespace polytile {

template <ExactField F>
struct NetPresentation {
  using Scalar = typename F::value_type;

  F field;
  std::size_t types = 0;  // n + 1
  std::size_t dim = 0;    // r + 1
  std::vector<std::string> ids;
  VertexSet vertices;
  std::vector<std::vector<MatrixOf<F>>> maps;  // maps[v][u] = M^v_u

  [[nodiscard]] std::size_t size() const { return vertices.size(); }
  [[nodiscard]] const MatrixOf<F>& map(std::size_t v, std::size_t u) const { return maps[v][u]; }
  [[nodiscard]] Mask ess(std::size_t v, std::size_t u) const {
    return essential_type(vertices[v], vertices[u]);
  }
  [[nodiscard]] AmbientPtr ambient() const {
    return std::make_shared<const Ambient>(ids, std::vector<std::size_t>(size(), dim));
  }

  [[nodiscard]] std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return i;
    throw InputError("unknown vertex id '" + id + "'");
  }

  /// Structural checks; throws InputError on malformed presentations.
  void validate() const {
    if (types < 1) throw InputError("need at least one arrow type");
    if (types > 32) throw LimitError("at most 32 arrow types");
    if (dim < 1) throw InputError("dimension must be positive");
    if (vertices.empty()) throw InputError("vertex set is empty");
    if (vertices.size() > kMaxGroundSet) throw LimitError("at most 20 vertices");
    if (ids.size() != vertices.size()) throw InputError("one id per vertex");
    std::set<std::string> seen_ids;
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < size(); ++i) {
      const auto& v = vertices[i];
      if (v.size() != types)
        throw InputError("vertex '" + ids[i] + "' has " + std::to_string(v.size()) +
                         " coordinates, expected " + std::to_string(types));
      if (normalize(v) != v) throw InputError("vertex '" + ids[i] + "' is not normalised to minimum 0");
      if (!seen.insert(v).second) throw InputError("vertex '" + ids[i] + "' repeats coordinates");
      if (!seen_ids.insert(ids[i]).second) throw InputError("duplicate vertex id '" + ids[i] + "'");
    }
    if (maps.size() != size()) throw InputError("map table has the wrong size");
    for (std::size_t v = 0; v < size(); ++v) {
      if (maps[v].size() != size()) throw InputError("map table has the wrong size");
      for (std::size_t u = 0; u < size(); ++u) {
        const auto& m = maps[v][u];
        if (m.rows() != dim || m.cols() != dim)
          throw InputError("map " + ids[v] + " -> " + ids[u] + " is not " + std::to_string(dim) + "x" +
                           std::to_string(dim));
      }
      if (!(maps[v][v] == identity(field, dim)))
        throw InputError("map " + ids[v] + " -> " + ids[v] + " must be the identity");
    }
  }
};

namespace detail {

template <ExactField F>
bool is_invertible(const F& field, const MatrixOf<F>& m) {
  return rank(field, m) == m.rows();
}

// dim of the intersection of the kernels of the given matrices.
template <ExactField F>
std::size_t kernel_intersection_dim(const F& field, std::size_t dim,
                                    const std::vector<const MatrixOf<F>*>& ms) {
  auto stacked = MatrixOf<F>::with_cols(dim);
  for (auto* m : ms) stacked = vstack<F>(stacked, *m);
  return dim - rank(field, std::move(stacked));
}

template <ExactField F>
Json pair_json(const NetPresentation<F>& net, std::initializer_list<std::size_t> idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(net.ids[i]);
  return out;
}

inline constexpr std::size_t kMaxWitnesses = 8;

inline void record(Json& list, Json item) {
  if (list.size() < kMaxWitnesses) list.push_back(std::move(item));
}

}  // namespace detail

/// Checks the linked-net axioms, exactness and the generator conditions on
/// the finite fragment H.
template <ExactField F>
Certificate verify(const NetPresentation<F>& net) {
  net.validate();
  const auto& field = net.field;
  const std::size_t h = net.size();
  const std::size_t types = net.types;
  Certificate cert;
  cert.kind = "linked net";
  cert.notes["scope"] = "verified on H";

  Json coh = Json::array(), circ = Json::array();
  std::size_t coh_checked = 0, circ_checked = 0;
  for (std::size_t u = 0; u < h; ++u)
    for (std::size_t v = 0; v < h; ++v) {
      if (v == u) continue;
      const Mask e1 = net.ess(u, v);
      for (std::size_t w = 0; w < h; ++w) {
        if (w == v) continue;
        auto prod = multiply(field, net.map(v, w), net.map(u, v));
        if (admissible_concat(e1, net.ess(v, w), types)) {
          if (w == u) continue;
          ++coh_checked;
          auto lambda = proportionality(field, net.map(u, w), prod);
          bool ok = lambda && (!field.is_zero(*lambda) || is_zero_matrix(field, net.map(u, w)));
          if (!ok) detail::record(coh, detail::pair_json(net, {u, v, w}));
        } else {
          ++circ_checked;
          if (!is_zero_matrix(field, prod)) detail::record(circ, detail::pair_json(net, {u, v, w}));
        }
      }
    }
  cert.add("coherence", coh.empty(), {{"triples_checked", coh_checked}, {"failures", coh}});
  cert.add("circuit vanishing", circ.empty(), {{"triples_checked", circ_checked}, {"failures", circ}});

  Json linked = Json::array();
  std::size_t linked_checked = 0;
  for (std::size_t v = 0; v < h; ++v)
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = a + 1; b < h; ++b) {
        if (a == v || b == v) continue;
        if ((net.ess(v, a) & net.ess(v, b)) != 0) continue;
        ++linked_checked;
        if (detail::kernel_intersection_dim(field, net.dim, {&net.map(v, a), &net.map(v, b)}) != 0)
          detail::record(linked, detail::pair_json(net, {v, a, b}));
      }
  cert.add("linked kernels", linked.empty(), {{"triples_checked", linked_checked}, {"failures", linked}});

  Json exact = Json::array();
  std::size_t exact_checked = 0;
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b) {
      if (a == b || !are_neighbors(net.vertices[a], net.vertices[b])) continue;
      ++exact_checked;
      // im M^a_b = ker M^b_a
      bool inside = is_zero_matrix(field, multiply(field, net.map(b, a), net.map(a, b)));
      bool dims = rank(field, net.map(a, b)) + rank(field, net.map(b, a)) == net.dim;
      if (!inside || !dims) detail::record(exact, detail::pair_json(net, {a, b}));
    }
  cert.add("exactness", exact.empty(), {{"pairs_checked", exact_checked}, {"failures", exact}});

  Json zero = Json::array();
  for (std::size_t v = 0; v < h; ++v)
    for (std::size_t u = 0; u < h; ++u)
      if (is_zero_matrix(field, net.map(v, u))) detail::record(zero, detail::pair_json(net, {v, u}));
  bool convex = is_convex(net.vertices);
  cert.add("reducedness", zero.empty() && convex, {{"zero_maps", zero}, {"hull_equals_H", convex}});

  Json iso = Json::array();
  for (std::size_t v = 0; v < h; ++v)
    for (std::size_t w = 0; w < h; ++w)
      if (w != v && detail::is_invertible(field, net.map(w, v)))
        detail::record(iso, detail::pair_json(net, {w, v}));
  cert.add("generation", iso.empty(), {{"invertible_maps", iso}});
  return cert;
}

/// W_v: the span of (M^v_u s | u in H) over s in k^{r+1}.
template <ExactField F>
Subspace<F> vertex_space(const NetPresentation<F>& net, std::size_t v) {
  const std::size_t d = net.dim;
  MatrixOf<F> rows(d, d * net.size(), net.field.zero());
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t u = 0; u < net.size(); ++u)
      for (std::size_t i = 0; i < d; ++i) rows(j, u * d + i) = net.map(v, u)(i, j);
  return Subspace<F>::span(net.field, net.ambient(), std::move(rows));
}

/// (mu_v, mu_v*) with mu_v*(I) = rank of the stacked M^v_u over u in I.
template <ExactField F>
ModularPair vertex_pair(const NetPresentation<F>& net, std::size_t v) {
  std::vector<std::vector<std::vector<typename F::value_type>>> groups(net.size());
  for (std::size_t u = 0; u < net.size(); ++u) {
    const auto& m = net.map(v, u);
    for (std::size_t i = 0; i < net.dim; ++i) {
      auto r = m.row(i);
      groups[u].emplace_back(r.begin(), r.end());
    }
  }
  SetFn mu_star(net.ids, rank_table(net.field, groups));
  return {adjoint(mu_star), std::move(mu_star)};
}

template <ExactField F>
std::vector<ModularPair> vertex_pairs(const NetPresentation<F>& net) {
  std::vector<ModularPair> out;
  for (std::size_t v = 0; v < net.size(); ++v) out.push_back(vertex_pair(net, v));
  return out;
}

/// Shadow in the polygon of every u in H, as an index into poly.members.
template <ExactField F>
std::vector<std::size_t> polygon_shadows(const NetPresentation<F>& net, const Polygon& poly) {
  VertexSet delta;
  for (auto i : poly.members) delta.push_back(net.vertices[i]);
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < net.size(); ++u) {
    auto c = shadow_candidates(net.vertices[u], delta);
    if (c.size() != 1)
      throw ContractViolation("vertex '" + net.ids[u] + "' has no unique shadow in the polygon");
    out.push_back(c.front());
  }
  return out;
}

/// W_Delta = image of (+)_{v in Delta} (intersection of ker M^v_w, w outside
/// R_v) under s_v -> (M^{w_u}_u s_{w_u} | u in H), w_u the shadow of u.
template <ExactField F>
Subspace<F> polygon_space(const NetPresentation<F>& net, const Polygon& poly) {
  const std::size_t d = net.dim;
  const std::size_t h = net.size();
  for (std::size_t i = 0; i < poly.members.size(); ++i)
    for (std::size_t j = i + 1; j < poly.members.size(); ++j)
      if (!are_neighbors(net.vertices[poly.members[i]], net.vertices[poly.members[j]]))
        throw InputError("vertex set is not a polygon");
  auto shadows = polygon_shadows(net, poly);
  auto rows = MatrixOf<F>::with_cols(d * h);
  for (std::size_t k = 0; k < poly.members.size(); ++k) {
    const std::size_t v = poly.members[k];
    auto stacked = MatrixOf<F>::with_cols(d);
    for (std::size_t w = 0; w < h; ++w)
      if (shadows[w] != k) stacked = vstack<F>(stacked, net.map(v, w));
    auto kernel = stacked.rows() == 0 ? identity(net.field, d) : nullspace(net.field, stacked);
    for (std::size_t b = 0; b < kernel.rows(); ++b) {
      std::vector<typename F::value_type> row(d * h, net.field.zero());
      auto s = kernel.row(b);
      for (std::size_t u = 0; u < h; ++u) {
        if (shadows[u] != k) continue;
        auto image = apply(net.field, net.map(v, u), s);
        for (std::size_t i = 0; i < d; ++i) row[u * d + i] = image[i];
      }
      rows.append_row(row);
    }
  }
  return Subspace<F>::span(net.field, net.ambient(), std::move(rows));
}

/// Ordered partitions pi of H whose face of P_mu meets the open simplex,
/// i.e. mu(F_j) - mu(F_j - x) >= 1 for every x in pi_j.
inline std::vector<OrderedPartition> interior_faces(const SetFn& mu) {
  const Mask full = mu.full();
  std::vector<OrderedPartition> out;
  OrderedPartition cur;
  std::function<void(Mask)> rec = [&](Mask f) {
    if (f == full) {
      out.push_back(cur);
      return;
    }
    const Mask rest = full & ~f;
    for (Mask s = rest; s; s = (s - 1) & rest) {
      const Mask g = f | s;
      bool ok = true;
      for (auto x : mask_elements(s))
        if (mu(g) - mu(g & ~bit(x)) < 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.parts.push_back(s);
      rec(g);
      cur.parts.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct FaceMatch {
  OrderedPartition pi;
  std::optional<std::vector<std::size_t>> constructed;  // sorted members of the built polygon
  std::optional<std::size_t> polygon;                    // index into polygons(H)
};

struct FaceReport {
  std::size_t vertex = 0;
  std::vector<FaceMatch> faces;
  std::vector<std::size_t> unmatched_polygons;  // polygons containing v hit by no face
  bool bijective = false;
};

/// Pairs every interior face of P_v with the polygon built from the nested
/// intersections I_j of essential types, and checks the pairing is a
/// bijection onto the polygons containing v.
template <ExactField F>
FaceReport faces_meeting_interior(const NetPresentation<F>& net, std::size_t v,
                                  const std::vector<Polygon>& polys, const SetFn& mu_v) {
  FaceReport rep;
  rep.vertex = v;
  const std::size_t h = net.size();
  const Mask all_types = full_mask(net.types);
  std::set<std::size_t> hit;
  bool ok = true;
  for (auto& pi : interior_faces(mu_v)) {
    FaceMatch fm{pi, std::nullopt, std::nullopt};
    auto filt = pi.filtration();
    std::vector<std::size_t> seq{v};
    bool built = true;
    for (std::size_t j = 1; j + 1 < filt.size(); ++j) {
      Mask inter = all_types;
      for (std::size_t u = 0; u < h; ++u)
        if (!has_bit(filt[j], u)) inter &= net.ess(v, u);
      if (inter == 0 || inter == all_types) {
        built = false;
        break;
      }
      auto target = neighbor_step(net.vertices[v], inter);
      auto c = shadow_candidates(target, net.vertices);
      if (c.size() != 1) {
        built = false;
        break;
      }
      seq.push_back(c.front());
    }
    if (built) {
      auto members = seq;
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (members.size() == seq.size()) {
        fm.constructed = members;
        for (std::size_t p = 0; p < polys.size(); ++p)
          if (polys[p].members == members) {
            auto it = polys[p].orientation.find(v);
            if (it != polys[p].orientation.end() && induced_partition(polys[p], v, net.vertices) == pi)
              fm.polygon = p;
          }
      }
    }
    if (!fm.polygon || !hit.insert(*fm.polygon).second) ok = false;
    rep.faces.push_back(std::move(fm));
  }
  for (std::size_t p = 0; p < polys.size(); ++p)
    if (polys[p].contains(v) && !hit.count(p)) rep.unmatched_polygons.push_back(p);
  rep.bijective = ok && rep.unmatched_polygons.empty();
  return rep;
}

/// c in k^H with c W_v inside W_u: c_w solves c_w M^v_w = M^u_w M^v_u when
/// v -> u -> w is admissible, and c_w = 0 otherwise.
template <ExactField F>
std::vector<typename F::value_type> find_scaling(const NetPresentation<F>& net, std::size_t v,
                                                 std::size_t u) {
  if (u == v) throw InputError("find_scaling needs distinct vertices");
  const auto& field = net.field;
  std::vector<typename F::value_type> c(net.size(), field.zero());
  const Mask e = net.ess(v, u);
  for (std::size_t w = 0; w < net.size(); ++w) {
    if (!admissible_concat(e, net.ess(u, w), net.types)) continue;
    auto lambda = proportionality(field, net.map(v, w), multiply(field, net.map(u, w), net.map(v, u)));
    if (!lambda || field.is_zero(*lambda))
      throw ContractViolation("no scalar relates " + net.ids[v] + " -> " + net.ids[w] + " and " +
                              net.ids[v] + " -> " + net.ids[u] + " -> " + net.ids[w]);
    c[w] = *lambda;
  }
  if (!vertex_space(net, u).contains(scale(c, vertex_space(net, v))))
    throw ContractViolation("c W_" + net.ids[v] + " is not contained in W_" + net.ids[u]);
  return c;
}

namespace detail {

// Integer matrix with entries in [-3, 3] invertible over F.
template <ExactField F>
MatrixOf<F> random_invertible(const F& field, std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  for (;;) {
    MatrixOf<F> g(d, d, field.zero());
    std::vector<std::vector<std::int64_t>> ints(d, std::vector<std::int64_t>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        ints[i][j] = entry(rng);
        g(i, j) = field.from_int(ints[i][j]);
      }
    // Invertibility over Q and F_p alike keeps ranks field-independent.
    RationalField q;
    MatrixOf<RationalField> gq(d, d, q.zero());
    PrimeField fp;
    MatrixOf<PrimeField> gp(d, d, fp.zero());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        gq(i, j) = q.from_int(ints[i][j]);
        gp(i, j) = fp.from_int(ints[i][j]);
      }
    if (rank(q, gq) == d && rank(fp, gp) == d && rank(field, g) == d) return g;
  }
}

}  // namespace detail

/// Conjugates M^v_u by random invertible matrices (G_u M^v_u G_v^{-1}) and
/// rescales every off-diagonal map by a random nonzero scalar.
template <ExactField F>
NetPresentation<F> twist(const NetPresentation<F>& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& field = net.field;
  std::vector<MatrixOf<F>> g, g_inv;
  for (std::size_t v = 0; v < net.size(); ++v) {
    g.push_back(detail::random_invertible(field, net.dim, rng));
    g_inv.push_back(inverse(field, g.back()));
  }
  std::uniform_int_distribution<int> pick(0, 5);
  const int scalars[] = {-3, -2, -1, 1, 2, 3};
  auto out = net;
  for (std::size_t v = 0; v < net.size(); ++v)
    for (std::size_t u = 0; u < net.size(); ++u) {
      if (u == v) continue;
      auto m = multiply(field, multiply(field, g[u], net.map(v, u)), g_inv[v]);
      out.maps[v][u] = scaled(field, m, field.from_int(scalars[pick(rng)]));
    }
  return out;
}

/// Min-plus form f(x) = min over k in K of (x_k + b_k); K = slots with an
/// offset.
struct TropicalForm {
  std::vector<std::optional<std::int64_t>> offsets;

  [[nodiscard]] std::int64_t operator()(const Vertex& x) const {
    std::optional<std::int64_t> best;
    for (std::size_t k = 0; k < offsets.size(); ++k)
      if (offsets[k]) {
        auto val = x[k] + *offsets[k];
        if (!best || val < *best) best = val;
      }
    return *best;
  }
};

struct TropicalSpec {
  std::size_t types = 0;
  std::vector<TropicalForm> forms;

  void validate() const {
    if (types < 1) throw InputError("need at least one arrow type");
    if (types > kMaxPolygonTypes) throw LimitError("monomial generator is limited to 7 arrow types");
    if (forms.empty()) throw InputError("need at least one form");
    for (const auto& f : forms) {
      if (f.offsets.size() != types) throw InputError("form has the wrong number of offsets");
      if (std::none_of(f.offsets.begin(), f.offsets.end(), [](const auto& o) { return o.has_value(); }))
        throw InputError("form has no slots");
    }
  }
};

namespace detail {

// Entry j of M^v_u: f_j constant along the minimal admissible path v -> u.
inline std::vector<bool> constancy(const TropicalSpec& spec, const Vertex& v, const Vertex& u) {
  auto t = path_type(v, u);
  Vertex end = v;
  for (std::size_t a = 0; a < end.size(); ++a) end[a] += t[a];
  std::vector<bool> out;
  for (const auto& f : spec.forms) out.push_back(f(end) == f(v));
  return out;
}

}  // namespace detail

/// Diagonal net of the min-plus forms with vertex set the minimum generating
/// set H: vertices with no incoming arrow that is an isomorphism.
template <ExactField F>
NetPresentation<F> generate_monomial(const F& field, const TropicalSpec& spec) {
  spec.validate();
  const std::size_t types = spec.types;
  std::int64_t lo = 0, hi = 0;
  bool first = true;
  for (const auto& f : spec.forms)
    for (const auto& o : f.offsets)
      if (o) {
        lo = first ? *o : std::min(lo, *o);
        hi = first ? *o : std::max(hi, *o);
        first = false;
      }
  const std::int64_t spread = hi - lo;
  const std::int64_t box = spread + 3;
  VertexSet found;
  Vertex v(types, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == types) {
      if (*std::min_element(v.begin(), v.end()) != 0) return;
      for (std::size_t b = 0; b < types; ++b) {
        Vertex w = v;
        --w[b];
        bool iso = std::all_of(spec.forms.begin(), spec.forms.end(),
                               [&](const TropicalForm& f) { return f(w) == f(v); });
        if (iso) return;
      }
      found.push_back(v);
      return;
    }
    for (std::int64_t x = 0; x <= box; ++x) {
      v[a] = x;
      rec(a + 1);
    }
  };
  rec(0);
  if (found.empty()) throw InputError("tropical forms give an empty generating set");
  for (const auto& z : found)
    for (auto x : z)
      if (x >= spread + 2) throw InputError("tropical forms give an unbounded generating set");
  std::sort(found.begin(), found.end());

  NetPresentation<F> net{field, types, spec.forms.size(), {}, found, {}};
  for (std::size_t i = 0; i < found.size(); ++i) net.ids.push_back("z" + std::to_string(i));
  if (found.size() > kMaxGroundSet) throw LimitError("generating set larger than 20 vertices");
  const std::size_t d = spec.forms.size();
  net.maps.assign(found.size(), std::vector<MatrixOf<F>>(found.size()));
  for (std::size_t a = 0; a < found.size(); ++a)
    for (std::size_t b = 0; b < found.size(); ++b) {
      MatrixOf<F> m(d, d, field.zero());
      auto c = detail::constancy(spec, found[a], found[b]);
      for (std::size_t j = 0; j < d; ++j)
        if (c[j]) m(j, j) = field.one();
      net.maps[a][b] = std::move(m);
    }
  return net;
}

struct RandomNetOptions {
  std::size_t types = 2;
  std::size_t dim = 2;
  std::int64_t max_offset = 3;
  std::size_t max_vertices = 12;
  std::size_t attempts = 1000;
};

/// Tropical spec drawn from `seed`: full-support forms with offsets in
/// [0, max_offset].
inline TropicalSpec random_tropical_spec(std::mt19937_64& rng, std::size_t types, std::size_t dim,
                                         std::int64_t max_offset) {
  std::uniform_int_distribution<std::int64_t> off(0, max_offset);
  TropicalSpec spec{types, {}};
  for (std::size_t j = 0; j < dim; ++j) {
    TropicalForm f;
    for (std::size_t k = 0; k < types; ++k) f.offsets.push_back(off(rng));
    spec.forms.push_back(std::move(f));
  }
  return spec;
}

/// First random spec (deterministic in the seed) whose generating set has at
/// most max_vertices elements.
template <ExactField F>
std::pair<TropicalSpec, NetPresentation<F>> generate_random(const F& field, std::uint64_t seed,
                                                            const RandomNetOptions& opt) {
  if (opt.types < 1 || opt.dim < 1) throw InputError("types and dimension must be positive");
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < opt.attempts; ++attempt) {
    auto spec = random_tropical_spec(rng, opt.types, opt.dim, opt.max_offset);
    std::optional<NetPresentation<F>> net;
    try {
      net = generate_monomial(field, spec);
    } catch (const LimitError&) {
      continue;
    }
    if (net->size() <= opt.max_vertices) return {spec, std::move(*net)};
  }
  throw LimitError("no random net within the vertex limit");
}

}  // namespace polytile
