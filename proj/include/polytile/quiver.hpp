#pragma once

// Vertex arithmetic of Z^n-quivers. A vertex is an integer vector with one
// slot per arrow type, normalised to minimum 0; an arrow of type a adds e_a.
// The minimal admissible path u -> v has type t = (v - u) - min(v - u) and
// essential type supp(t).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polytile/bits.hpp"
#include "polytile/error.hpp"
#include "polytile/setfn.hpp"

namespace polytile {

using Vertex = std::vector<std::int64_t>;
using VertexSet = std::vector<Vertex>;

inline constexpr std::size_t kMaxPolygonTypes = 7;
inline constexpr std::size_t kMaxHullBox = 5'000'000;

inline Vertex normalize(Vertex v) {
  if (v.empty()) throw InputError("vertex needs at least one slot");
  auto m = *std::min_element(v.begin(), v.end());
  for (auto& x : v) x -= m;
  return v;
}

inline std::string vertex_string(const Vertex& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

/// Type vector of the minimal admissible path u -> v.
inline Vertex path_type(const Vertex& u, const Vertex& v) {
  if (u.size() != v.size()) throw InputError("vertices with different numbers of slots");
  Vertex d(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) d[i] = v[i] - u[i];
  return normalize(std::move(d));
}

inline Mask essential_type(const Vertex& u, const Vertex& v) {
  auto t = path_type(u, v);
  if (t.size() > 32) throw LimitError("at most 32 arrow types");
  Mask m = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] != 0) m |= bit(i);
  return m;
}

/// Concatenation of admissible paths with essential types e1, e2 is
/// admissible iff some type is avoided by both.
inline bool admissible_concat(Mask e1, Mask e2, std::size_t types) {
  return (e1 | e2) != full_mask(types);
}

inline Vertex neighbor_step(const Vertex& v, Mask types) {
  if (types == 0 || types == full_mask(v.size()))
    throw InputError("neighbor step needs a nonempty proper set of types");
  if (types & ~full_mask(v.size())) throw InputError("unknown arrow type");
  Vertex w = v;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (has_bit(types, i)) ++w[i];
  return normalize(std::move(w));
}

/// u and v are distinct and v = I.u for some I.
inline bool are_neighbors(const Vertex& u, const Vertex& v) {
  auto t = path_type(u, v);
  auto mx = *std::max_element(t.begin(), t.end());
  return mx == 1;
}

/// u in C_I(v): some admissible path v -> u uses only types in I.
inline bool in_cone(const Vertex& v, Mask allowed, const Vertex& u) {
  return (essential_type(v, u) & ~allowed) == 0;
}

namespace detail {

inline void require_uniform(const VertexSet& h) {
  if (h.empty()) throw InputError("vertex set is empty");
  for (const auto& v : h) {
    if (v.size() != h.front().size()) throw InputError("vertices with different numbers of slots");
    if (normalize(v) != v) throw InputError("vertex " + vertex_string(v) + " is not normalised");
  }
}

inline VertexSet sorted_unique(VertexSet h) {
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

}  // namespace detail

inline VertexSet normalize_set(VertexSet h) {
  for (auto& v : h) v = normalize(std::move(v));
  return detail::sorted_unique(std::move(h));
}

/// v in P(H): for each type a some z in H reaches v by a path avoiding a.
inline bool in_hull(const Vertex& v, const VertexSet& h) {
  const std::size_t types = v.size();
  Mask reached = 0;
  for (const auto& z : h) reached |= ~essential_type(z, v) & full_mask(types);
  return reached == full_mask(types);
}

/// P(H), sorted. In min-0 coordinates every hull element lies in the box
/// prod_a [0, max_{z in H} z_a], which is scanned.
inline VertexSet hull(const VertexSet& input) {
  auto h = normalize_set(input);
  detail::require_uniform(h);
  const std::size_t types = h.front().size();
  Vertex hi(types, 0);
  for (const auto& z : h)
    for (std::size_t a = 0; a < types; ++a) hi[a] = std::max(hi[a], z[a]);
  double box = 1;
  for (auto x : hi) box *= static_cast<double>(x + 1);
  if (box > static_cast<double>(kMaxHullBox)) throw LimitError("hull search box too large");
  VertexSet out;
  Vertex v(types, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == types) {
      if (*std::min_element(v.begin(), v.end()) == 0 && in_hull(v, h)) out.push_back(v);
      return;
    }
    for (std::int64_t x = 0; x <= hi[a]; ++x) {
      v[a] = x;
      rec(a + 1);
    }
  };
  rec(0);
  return out;
}

/// P(H) = H. Lattice points of P(H) are joined to H by neighbor steps inside
/// P(H), so only the neighbors of H need testing.
inline bool is_convex(const VertexSet& input) {
  auto h = normalize_set(input);
  detail::require_uniform(h);
  const std::size_t types = h.front().size();
  for (const auto& z : h)
    for (Mask i = 1; i < full_mask(types); ++i) {
      auto w = neighbor_step(z, i);
      if (!std::binary_search(h.begin(), h.end(), w) && in_hull(w, h)) return false;
    }
  return true;
}

/// Members w of H through which every z in H reaches u admissibly.
inline std::vector<std::size_t> shadow_candidates(const Vertex& u, const VertexSet& h) {
  std::vector<std::size_t> out;
  const std::size_t types = u.size();
  for (std::size_t i = 0; i < h.size(); ++i) {
    Mask to_u = essential_type(h[i], u);
    bool ok = std::all_of(h.begin(), h.end(), [&](const Vertex& z) {
      return admissible_concat(essential_type(z, h[i]), to_u, types);
    });
    if (ok) out.push_back(i);
  }
  return out;
}

/// Index in H of the shadow of u; H must be convex.
inline std::size_t shadow_index(const Vertex& u, const VertexSet& h, bool check_convex = true) {
  detail::require_uniform(h);
  if (check_convex && !is_convex(h)) throw InputError("shadow requires a convex vertex set");
  auto c = shadow_candidates(normalize(u), h);
  if (c.size() != 1)
    throw ContractViolation("vertex " + vertex_string(u) + " has " + std::to_string(c.size()) +
                            " shadows");
  return c.front();
}

inline Vertex shadow(const Vertex& u, const VertexSet& h) { return h[shadow_index(u, h)]; }

/// For each type a the unique u_a in H with C_{T-a}(u_a) meeting H only in
/// u_a, found by descending r(v) = #(C_{T-a}(v) n H).
inline VertexSet extreme_vertices(const VertexSet& input, bool check_convex = true) {
  auto h = normalize_set(input);
  detail::require_uniform(h);
  if (check_convex && !is_convex(h)) throw InputError("extreme vertices require a convex vertex set");
  const std::size_t types = h.front().size();
  VertexSet out;
  for (std::size_t a = 0; a < types; ++a) {
    const Mask allowed = full_mask(types) & ~bit(a);
    auto cone = [&](std::size_t v) {
      std::vector<std::size_t> c;
      for (std::size_t u = 0; u < h.size(); ++u)
        if (in_cone(h[v], allowed, h[u])) c.push_back(u);
      return c;
    };
    std::size_t v = 0;
    auto c = cone(v);
    while (c.size() > 1) {
      std::optional<std::size_t> best;
      std::size_t best_r = c.size();
      for (auto u : c) {
        if (u == v) continue;
        auto r = cone(u).size();
        if (r < best_r) best = u, best_r = r;
      }
      if (!best)
        throw ContractViolation("descent for type " + std::to_string(a) + " stalled at " +
                                vertex_string(h[v]));
      v = *best;
      c = cone(v);
    }
    for (std::size_t u = 0; u < h.size(); ++u) {
      if (u != v && cone(u).size() == 1)
        throw ContractViolation("type " + std::to_string(a) + " has several extreme vertices");
      if (has_bit(essential_type(h[u], h[v]), a))
        throw ContractViolation("path from " + vertex_string(h[u]) + " to the extreme vertex uses type " +
                                std::to_string(a));
    }
    out.push_back(h[v]);
  }
  return out;
}

/// Pairwise-neighbouring vertex subset of H, with the cyclic orientation
/// seen from each of its vertices.
struct Polygon {
  std::vector<std::size_t> members;  // sorted indices into H
  // base index -> (v_1 = base, v_2, ..., v_m) and the type parts (I_1, ..., I_m)
  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<Mask>>> orientation;

  [[nodiscard]] std::size_t size() const { return members.size(); }
  [[nodiscard]] Mask mask() const {
    Mask m = 0;
    for (auto i : members) m |= bit(i);
    return m;
  }
  [[nodiscard]] bool contains(std::size_t i) const {
    return std::find(members.begin(), members.end(), i) != members.end();
  }
};

/// Calls visit for every ordered set partition of the first `types` labels.
inline void for_each_ordered_set_partition(std::size_t types,
                                           const std::function<void(const std::vector<Mask>&)>& visit) {
  std::vector<Mask> parts;
  std::function<void(Mask)> rec = [&](Mask left) {
    if (left == 0) {
      visit(parts);
      return;
    }
    for (Mask s = left; s; s = (s - 1) & left) {
      parts.push_back(s);
      rec(left & ~s);
      parts.pop_back();
    }
  };
  rec(full_mask(types));
}

/// All polygons inside H (singletons included), sorted by size then members.
/// Indices refer to H in the given order; H must be normalised and distinct.
inline std::vector<Polygon> polygons(const VertexSet& h) {
  detail::require_uniform(h);
  const std::size_t types = h.front().size();
  if (types > kMaxPolygonTypes) throw LimitError("polygon enumeration is limited to 7 arrow types");
  std::map<Vertex, std::size_t> position;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!position.emplace(h[i], i).second) throw InputError("vertex set has duplicates");
  auto index_of = [&](const Vertex& v) -> std::optional<std::size_t> {
    auto it = position.find(v);
    if (it == position.end()) return std::nullopt;
    return it->second;
  };
  std::map<std::vector<std::size_t>, Polygon> found;
  for (std::size_t base = 0; base < h.size(); ++base)
    for_each_ordered_set_partition(types, [&](const std::vector<Mask>& parts) {
      std::vector<std::size_t> seq{base};
      Vertex cur = h[base];
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        cur = neighbor_step(cur, parts[i]);
        auto idx = index_of(cur);
        if (!idx) return;
        seq.push_back(*idx);
      }
      auto members = seq;
      std::sort(members.begin(), members.end());
      auto& poly = found[members];
      poly.members = members;
      auto [it, inserted] = poly.orientation.emplace(base, std::make_pair(seq, parts));
      if (!inserted && it->second.first != seq)
        throw ContractViolation("polygon with two orientations from one base vertex");
    });
  std::vector<Polygon> out;
  for (auto& [k, p] : found) out.push_back(std::move(p));
  std::stable_sort(out.begin(), out.end(),
                   [](const Polygon& a, const Polygon& b) { return a.size() < b.size(); });
  return out;
}

/// (pi_1, ..., pi_m) over the indices of H: pi_i collects the u in H whose
/// shadow in the polygon is v_i, ordered by the orientation from `base`.
inline OrderedPartition induced_partition(const Polygon& poly, std::size_t base, const VertexSet& h) {
  auto it = poly.orientation.find(base);
  if (it == poly.orientation.end()) throw InputError("base vertex is not in the polygon");
  const auto& seq = it->second.first;
  VertexSet delta;
  for (auto i : seq) delta.push_back(h.at(i));
  OrderedPartition pi{std::vector<Mask>(seq.size(), 0)};
  for (std::size_t u = 0; u < h.size(); ++u) {
    auto c = shadow_candidates(h[u], delta);
    if (c.size() != 1)
      throw ContractViolation("vertex " + vertex_string(h[u]) + " has no unique shadow in a polygon");
    pi.parts[c.front()] |= bit(u);
  }
  return pi;
}

}  // namespace polytile
