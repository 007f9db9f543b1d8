#pragma once

// Certificates for the tiling of the standard simplex by the polytopes P_v of
// a linked net, the partition {M_v} of Omega_r(Z) giving the class of the
// linked projective space, point membership in LP_H(V), and the reduction
// complex.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polytile/certificate.hpp"
#include "polytile/linked_net.hpp"
#include "polytile/parallel.hpp"

namespace polytile {

template <ExactField F>
Certificate tiling_certificate(const NetPresentation<F>& net, const std::vector<std::int64_t>& dilations,
                               std::size_t threads = 1) {
  for (auto t : dilations)
    if (t < 1) throw InputError("dilations must be positive");
  Certificate cert;
  cert.kind = "tiling";
  auto axioms = verify(net);
  Json failed = Json::array();
  for (const auto& c : axioms.clauses)
    if (!c.passed) failed.push_back(c.name);
  cert.add("net axioms", failed.empty(), {{"failed_clauses", failed}});
  if (!failed.empty()) return cert;

  const std::size_t h = net.size();
  const auto& field = net.field;
  const auto& ids = net.ids;
  std::vector<ModularPair> pairs(h);
  parallel_for(h, threads, [&](std::size_t v) { pairs[v] = vertex_pair(net, v); });

  {
    Json cds = Json::object();
    bool ok = true;
    for (std::size_t v = 0; v < h; ++v) {
      auto cd = codimension(pairs[v].mu);
      cds[ids[v]] = cd;
      ok = ok && cd == 1;
    }
    cert.add("simplicity", ok, {{"codimension", cds}});
  }
  {
    Json dup = Json::array();
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = a + 1; b < h; ++b)
        if (pairs[a] == pairs[b]) dup.push_back({ids[a], ids[b]});
    cert.add("distinct polytopes", dup.empty(), {{"equal", dup}});
  }
  {
    std::vector<Json> entries(h * h);
    std::vector<char> good(h * h, 1);
    parallel_for(h * h, threads, [&](std::size_t k) {
      const std::size_t v = k / h, u = k % h;
      if (u == v) return;
      Json e = {{"from", ids[v]}, {"to", ids[u]}};
      try {
        auto c = find_scaling(net, v, u);
        Mask support = 0;
        for (std::size_t w = 0; w < h; ++w)
          if (!field.is_zero(c[w])) support |= bit(w);
        // (supp c, complement) separates (mu_u, mu_v): mu_v*(I) <= mu_u(I)
        bool sep = pairs[v].mu_star(support) <= pairs[u].mu(support);
        bool nontrivial = false;
        if (support != full_mask(h))
          if (auto s = separation_at(pairs[u].mu, pairs[v].mu, support)) nontrivial = s->nontrivial;
        e["c"] = json_vector(field, c);
        e["I"] = json_subset(support, ids);
        e["separation"] = sep && nontrivial;
        good[k] = sep && nontrivial;
      } catch (const ContractViolation& err) {
        e["error"] = err.what();
        good[k] = 0;
      }
      entries[k] = std::move(e);
    });
    Json list = Json::array();
    bool ok = true;
    for (std::size_t k = 0; k < h * h; ++k) {
      if (k / h == k % h) continue;
      list.push_back(std::move(entries[k]));
      ok = ok && good[k];
    }
    cert.add("separations", ok, {{"pairs", list}});
  }
  {
    auto polys = polygons(net.vertices);
    std::map<Mask, SetFn> two_gon_mu;
    Json faces = Json::array();
    bool ok = true;
    for (std::size_t v = 0; v < h; ++v)
      for (Mask a = 1; a < full_mask(h); ++a) {
        auto pi = OrderedPartition::bipartition(a, h);
        if (!face_meets_open_simplex(pairs[v].mu, pi)) continue;
        auto face = split(pairs[v].mu, pi);
        Json rec = {{"vertex", ids[v]}, {"I", json_subset(a, ids)}};
        std::optional<std::size_t> partner;
        for (const auto& p : polys) {
          if (p.size() != 2 || !p.contains(v)) continue;
          if (induced_partition(p, v, net.vertices) == pi)
            partner = p.members[0] == v ? p.members[1] : p.members[0];
        }
        bool matched = false;
        if (partner) {
          std::vector<std::size_t> mem{std::min(v, *partner), std::max(v, *partner)};
          const Polygon* two_gon = nullptr;
          for (const auto& p : polys)
            if (p.members == mem) two_gon = &p;
          auto it = two_gon_mu.find(two_gon->mask());
          if (it == two_gon_mu.end())
            it = two_gon_mu.emplace(two_gon->mask(), modular_pair_of(polygon_space(net, *two_gon)).mu).first;
          const auto& mu_delta = it->second;
          matched = face == mu_delta && split(pairs[*partner].mu, pi.complement()) == face;
          rec["two_gon"] = {ids[v], ids[*partner]};
        } else {
          rec["two_gon"] = nullptr;
        }
        rec["faces_match"] = matched;
        ok = ok && matched;
        faces.push_back(std::move(rec));
      }
    cert.add("completeness", ok, {{"faces", faces}});
  }
  std::vector<CoverageResult> cov(dilations.size());
  parallel_for(dilations.size(), threads, [&](std::size_t i) {
    cov[i] = simplex_coverage(pairs, static_cast<std::int64_t>(net.dim), dilations[i]);
  });
  for (const auto& c : cov) {
    Json d = {{"dilation", c.dilation}, {"simplex_points", c.simplex_points},
              {"search_nodes", c.nodes_visited}};
    if (c.uncovered) d["uncovered_point"] = *c.uncovered;
    cert.add("coverage t=" + std::to_string(c.dilation), c.covered(), std::move(d));
  }
  cert.notes["scope"] = "verified on H";
  cert.notes["coverage"] = "checked at finitely many dilations";
  return cert;
}

struct ChowEntry {
  std::vector<std::int64_t> q;
  std::vector<std::size_t> components;  // vertices v with q in M_v

  [[nodiscard]] std::size_t multiplicity() const { return components.size(); }
};

struct ChowClass {
  std::vector<std::string> ids;
  std::int64_t r = 0;
  std::vector<ChowEntry> entries;               // Omega_r(Z) in lexicographic order
  std::vector<std::vector<std::size_t>> sets;   // sets[v] = indices into entries

  /// {M_v} partitions Omega_r(Z).
  [[nodiscard]] bool is_partition() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ChowEntry& e) { return e.multiplicity() == 1; });
  }

  [[nodiscard]] Json to_json() const {
    Json out = Json::array();
    for (const auto& e : entries) {
      Json item = {{"q", e.q}, {"multiplicity", e.multiplicity()}};
      if (e.components.size() == 1) item["component"] = ids[e.components.front()];
      else {
        Json comps = Json::array();
        for (auto c : e.components) comps.push_back(ids[c]);
        item["component"] = e.components.empty() ? Json(nullptr) : comps;
      }
      out.push_back(std::move(item));
    }
    return out;
  }
};

/// M_v = {q in Omega_r(Z) : q(I) <= mu_v*(I) - 1 for every proper nonempty I}.
inline ChowClass chow_class_from_pairs(const std::vector<ModularPair>& pairs,
                                       const std::vector<std::string>& ids) {
  if (pairs.empty()) throw InputError("no vertices");
  const std::size_t h = pairs.size();
  const std::int64_t r = pairs.front().range() - 1;
  ChowClass out{ids, r, {}, std::vector<std::vector<std::size_t>>(h)};
  const Mask full = full_mask(h);
  std::vector<std::int64_t> sums(std::size_t{1} << h, 0);
  for_each_composition(h, r, [&](const std::vector<std::int64_t>& q) {
    for (Mask i = 1; i <= full; ++i) {
      auto low = static_cast<std::size_t>(std::countr_zero(i));
      sums[i] = sums[i & (i - 1)] + q[low];
    }
    ChowEntry e{q, {}};
    for (std::size_t v = 0; v < h; ++v) {
      bool in = true;
      for (Mask i = 1; i < full && in; ++i)
        if (sums[i] > pairs[v].mu_star(i) - 1) in = false;
      if (in) {
        e.components.push_back(v);
        out.sets[v].push_back(out.entries.size());
      }
    }
    out.entries.push_back(std::move(e));
  });
  return out;
}

template <ExactField F>
ChowClass chow_class(const NetPresentation<F>& net) {
  return chow_class_from_pairs(vertex_pairs(net), net.ids);
}

/// Monomial prod_v h_v^{r - q(v)} as text.
inline std::string chow_monomial(const ChowClass& c, const ChowEntry& e) {
  std::string s;
  for (std::size_t v = 0; v < e.q.size(); ++v) {
    auto exp = c.r - e.q[v];
    if (exp == 0) continue;
    if (!s.empty()) s += "*";
    s += "h_" + c.ids[v];
    if (exp > 1) s += "^" + std::to_string(exp);
  }
  return s.empty() ? "1" : s;
}

/// A point of prod_v P(V_v), each block scaled to have first nonzero entry 1.
template <ExactField F>
struct ProjectivePoint {
  std::vector<std::vector<typename F::value_type>> blocks;

  static ProjectivePoint make(const F& field, std::vector<std::vector<typename F::value_type>> blocks) {
    for (auto& b : blocks) {
      auto it = std::find_if(b.begin(), b.end(), [&](const auto& x) { return !field.is_zero(x); });
      if (it == b.end()) throw InputError("projective point has a zero block");
      typename F::value_type inv = field.one() / *it;
      for (auto& x : b) x = x * inv;
    }
    return {std::move(blocks)};
  }
};

struct LpMembership {
  bool member = false;
  Mask open_strata = 0;  // v whose open stratum contains the point
};

template <ExactField F>
LpMembership lp_membership(const NetPresentation<F>& net, const ProjectivePoint<F>& p) {
  const auto& field = net.field;
  if (p.blocks.size() != net.size()) throw InputError("point needs one block per vertex");
  for (const auto& b : p.blocks) {
    if (b.size() != net.dim) throw InputError("block has the wrong length");
    if (std::all_of(b.begin(), b.end(), [&](const auto& x) { return field.is_zero(x); }))
      throw InputError("projective point has a zero block");
  }
  LpMembership out{true, 0};
  for (std::size_t v = 0; v < net.size(); ++v) {
    bool open = true;
    for (std::size_t w = 0; w < net.size(); ++w) {
      auto image = apply(field, net.map(v, w), std::span<const typename F::value_type>(p.blocks[v]));
      MatrixOf<F> pair = MatrixOf<F>::with_cols(net.dim);
      pair.append_row(image);
      pair.append_row(p.blocks[w]);
      if (rank(field, pair) > 1) out.member = false;
      if (std::all_of(image.begin(), image.end(), [&](const auto& x) { return field.is_zero(x); }))
        open = false;
    }
    if (open) out.open_strata |= bit(v);
  }
  if (!out.member) out.open_strata = 0;
  return out;
}

struct ReductionComplex {
  std::vector<Mask> simplices;           // polygons of H, sorted by size then mask
  std::vector<Mask> polytope_simplices;  // from common faces meeting the open simplex
  bool consistent = false;
};

namespace detail {

inline std::vector<Mask> downward_closure(const std::vector<Mask>& tops) {
  std::set<Mask> all;
  for (auto t : tops)
    for (Mask s = t; s; s = (s - 1) & t) all.insert(s);
  std::vector<Mask> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(),
                   [](Mask a, Mask b) { return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b; });
  return out;
}

}  // namespace detail

/// The simplicial complex of polygons in H, cross-checked against the sets of
/// vertices whose polytopes share a face meeting the open simplex.
template <ExactField F>
ReductionComplex reduction_complex(const NetPresentation<F>& net) {
  auto pairs = vertex_pairs(net);
  std::vector<Mask> poly_masks;
  for (const auto& p : polygons(net.vertices)) poly_masks.push_back(p.mask());
  std::vector<Mask> tops;
  for (std::size_t v = 0; v < net.size(); ++v)
    for (const auto& pi : interior_faces(pairs[v].mu)) {
      auto face = split(pairs[v].mu, pi);
      Mask s = 0;
      for (std::size_t u = 0; u < net.size(); ++u) {
        bool inside = true;
        for (Mask i = 1; i <= face.full() && inside; ++i)
          if (face(i) < pairs[u].mu(i)) inside = false;
        if (inside) s |= bit(u);
      }
      tops.push_back(s);
    }
  ReductionComplex out;
  out.simplices = detail::downward_closure(poly_masks);
  out.polytope_simplices = detail::downward_closure(tops);
  out.consistent = out.simplices == out.polytope_simplices;
  return out;
}

inline Json complex_json(const ReductionComplex& c, const std::vector<std::string>& ids) {
  Json simp = Json::array();
  for (auto m : c.simplices) simp.push_back(json_subset(m, ids));
  return {{"simplices", simp}, {"matches_polytope_complex", c.consistent}};
}

}  // namespace polytile
