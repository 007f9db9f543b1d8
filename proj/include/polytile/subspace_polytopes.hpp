#pragma once

// Modular pairs attached to subspaces W of U = (+)_v U_v, graded splittings
// W_pi, and certification of tilings of the standard simplex by collections
// of such polytopes.

#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "polytile/certificate.hpp"
#include "polytile/setfn.hpp"
#include "polytile/subspace.hpp"

namespace polytile {

namespace detail {

// Echelon basis supporting incremental insertion.
template <ExactField F>
struct EchelonBasis {
  std::vector<std::vector<typename F::value_type>> rows;
  std::vector<std::size_t> pivots;

  bool insert(const F& field, std::vector<typename F::value_type> v) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto p = pivots[i];
      if (field.is_zero(v[p])) continue;
      typename F::value_type factor = v[p];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= factor * rows[i][c];
    }
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (field.is_zero(v[c])) continue;
      typename F::value_type inv = field.one() / v[c];
      for (auto& x : v) x = x * inv;
      rows.push_back(std::move(v));
      pivots.push_back(c);
      return true;
    }
    return false;
  }
};

}  // namespace detail

/// rank_table[I] = dim span of the vectors in groups[b] for b in I.
template <ExactField F>
std::vector<std::int64_t> rank_table(
    const F& field, const std::vector<std::vector<std::vector<typename F::value_type>>>& groups) {
  const std::size_t h = groups.size();
  if (h > kMaxGroundSet) throw LimitError("ground set too large for a rank table");
  std::vector<std::int64_t> table(std::size_t{1} << h, 0);
  std::function<void(Mask, std::size_t, const detail::EchelonBasis<F>&)> rec =
      [&](Mask m, std::size_t next, const detail::EchelonBasis<F>& basis) {
        table[m] = static_cast<std::int64_t>(basis.rows.size());
        for (std::size_t b = next; b < h; ++b) {
          auto child = basis;
          for (const auto& v : groups[b]) child.insert(field, v);
          rec(m | bit(b), b + 1, child);
        }
      };
  rec(0, 0, detail::EchelonBasis<F>{});
  return table;
}

/// (mu_W, mu_W*) with mu_W*(I) = dim W_I and mu_W(I) = dim W^I.
template <ExactField F>
ModularPair modular_pair_of(const Subspace<F>& w) {
  const auto& amb = *w.ambient();
  const auto& basis = w.basis();
  std::vector<std::vector<std::vector<typename F::value_type>>> groups(amb.blocks());
  for (std::size_t b = 0; b < amb.blocks(); ++b)
    for (std::size_t k = 0; k < amb.block_dim(b); ++k) {
      std::vector<typename F::value_type> col(basis.rows(), w.field().zero());
      for (std::size_t r = 0; r < basis.rows(); ++r) col[r] = basis(r, amb.block_offset(b) + k);
      groups[b].push_back(std::move(col));
    }
  SetFn mu_star(amb.labels(), rank_table(w.field(), groups));
  return {adjoint(mu_star), std::move(mu_star)};
}

/// W_pi = (+)_j theta_{pi_j}(W^{F_j}).
template <ExactField F>
Subspace<F> split_subspace(const Subspace<F>& w, const OrderedPartition& pi) {
  pi.validate(w.ambient()->blocks());
  auto f = pi.filtration();
  auto rows = MatrixOf<F>::with_cols(w.ambient()->total_dim());
  for (std::size_t j = 1; j < f.size(); ++j) {
    auto piece = coordinate_image(coordinate_section(w, f[j]), pi.parts[j - 1]);
    rows = vstack<F>(rows, piece.basis());
  }
  return Subspace<F>::span(w.field(), w.ambient(), std::move(rows));
}

/// Which alternative holds for phi W1 in W2 with W1, W2 simple.
enum class ScalingBranch { isomorphism, separation };

struct ScalingVerdict {
  ScalingBranch branch;
  Mask support = 0;  // {v : phi_v != 0}
  std::int64_t image_dim = 0;    // mu*_{W1}(support)
  std::int64_t section_dim = 0;  // mu_{W2}(support)
  bool nontrivial = false;
};

enum class ScalingPrecondition {
  dimension_mismatch,
  zero_scaling,
  not_contained,
  not_simple,
};

inline const char* to_string(ScalingPrecondition p) {
  switch (p) {
    case ScalingPrecondition::dimension_mismatch: return "dimension mismatch";
    case ScalingPrecondition::zero_scaling: return "scaling vector is zero";
    case ScalingPrecondition::not_contained: return "phi W1 is not contained in W2";
    case ScalingPrecondition::not_simple: return "subspace is not simple";
  }
  return "unknown";
}

class ScalingPreconditionError : public InputError {
public:
  explicit ScalingPreconditionError(ScalingPrecondition kind)
      : InputError(to_string(kind)), kind_(kind) {}
  [[nodiscard]] ScalingPrecondition kind() const { return kind_; }

private:
  ScalingPrecondition kind_;
};

template <ExactField F>
ScalingVerdict interiors_disjoint_or_isomorphic(const Subspace<F>& w1, const Subspace<F>& w2,
                                                const std::vector<typename F::value_type>& phi) {
  w1.require_same_ambient(w2);
  const auto& field = w1.field();
  if (w1.dim() != w2.dim()) throw ScalingPreconditionError(ScalingPrecondition::dimension_mismatch);
  if (phi.size() != w1.ambient()->blocks()) throw InputError("scaling vector has the wrong length");
  Mask support = 0;
  for (std::size_t v = 0; v < phi.size(); ++v)
    if (!field.is_zero(phi[v])) support |= bit(v);
  if (support == 0) throw ScalingPreconditionError(ScalingPrecondition::zero_scaling);
  if (!w2.contains(scale(phi, w1))) throw ScalingPreconditionError(ScalingPrecondition::not_contained);
  auto p1 = modular_pair_of(w1);
  auto p2 = modular_pair_of(w2);
  if (!is_simple(p1.mu) || !is_simple(p2.mu))
    throw ScalingPreconditionError(ScalingPrecondition::not_simple);
  ScalingVerdict out{ScalingBranch::isomorphism, support};
  out.image_dim = p1.mu_star(support);
  out.section_dim = p2.mu(support);
  if (support == w1.ambient()->all_blocks()) return out;
  out.branch = ScalingBranch::separation;
  for (const auto& s : all_separations(p2.mu, p1.mu))
    if (s.i == support) out.nontrivial = s.nontrivial;
  return out;
}

struct CoverageResult {
  std::int64_t dilation = 0;
  std::int64_t simplex_points = 0;
  std::int64_t nodes_visited = 0;
  std::optional<std::vector<std::int64_t>> uncovered;

  [[nodiscard]] bool covered() const { return !uncovered; }
};

/// Decides whether every integer point of t * Omega_{range} lies in the union
/// of the dilated polytopes t P_mu. Subtrees of the composition search that
/// lie entirely inside one polytope are skipped.
inline CoverageResult simplex_coverage(const std::vector<ModularPair>& pairs, std::int64_t range,
                                       std::int64_t t) {
  if (t < 1) throw InputError("dilation must be positive");
  if (pairs.empty()) throw InputError("coverage needs at least one polytope");
  if (pairs.size() > 64) throw LimitError("coverage handles at most 64 polytopes");
  const std::size_t h = pairs.front().size();
  for (const auto& p : pairs)
    if (p.size() != h || p.range() != range) throw InputError("polytopes live in different simplices");
  CoverageResult res{t, composition_count(h, t * range), 0, std::nullopt};
  const std::int64_t total = t * range;
  if (h == 0) return res;
  const Mask full = full_mask(h);
  const std::size_t np = pairs.size();
  const std::size_t subsets = std::size_t{1} << h;

  std::vector<std::vector<std::int64_t>> lo(np, std::vector<std::int64_t>(subsets));
  std::vector<std::vector<std::int64_t>> hi(np, std::vector<std::int64_t>(subsets));
  for (std::size_t p = 0; p < np; ++p)
    for (Mask m = 0; m <= full; ++m) {
      lo[p][m] = t * pairs[p].mu(m);
      hi[p][m] = t * pairs[p].mu_star(m);
    }

  // For prefix {0..k-1} and J inside it: bounds over I with I & prefix = J and
  // I meeting the suffix N partially.
  struct Bounds {
    std::vector<std::int64_t> max_low, min_up;
  };
  std::vector<std::vector<Bounds>> partial(np, std::vector<Bounds>(h + 1));
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t k = 0; k <= h; ++k) {
      const Mask prefix = full_mask(k);
      const Mask suffix = full & ~prefix;
      auto& b = partial[p][k];
      b.max_low.assign(std::size_t{1} << k, std::numeric_limits<std::int64_t>::min());
      b.min_up.assign(std::size_t{1} << k, std::numeric_limits<std::int64_t>::max());
      for (Mask j = 0; j <= prefix; ++j)
        for (Mask s = suffix; s; s = (s - 1) & suffix) {
          if (s == suffix) continue;
          b.max_low[j] = std::max(b.max_low[j], lo[p][j | s]);
          b.min_up[j] = std::min(b.min_up[j], hi[p][j | s]);
        }
    }

  // With mu* the adjoint of mu, a constraint on I containing the last
  // coordinate is the constraint on H - I, so complete points need no check.
  bool dual = true;
  for (std::size_t p = 0; p < np && dual; ++p)
    for (Mask m = 0; m <= full && dual; ++m) dual = hi[p][m] == lo[p][full] - lo[p][full & ~m];

  std::vector<std::int64_t> q(h, 0);
  std::vector<std::int64_t> sums(subsets, 0);

  // Values of coordinate k keeping every constraint on a subset of {0..k}
  // that contains k: lo(J + k) <= sums(J) + x <= hi(J + k) for J in the prefix.
  // A node fixing coordinate k prepares its children's windows in one pass:
  // with J = J' or J' + k, the child window is [max(a, b - x), min(c, d - x)].
  struct Lookahead {
    std::int64_t a, b, c, d;
  };
  auto lookahead = [&](std::size_t p, std::size_t k) {
    const Mask top = bit(k), next = bit(k + 1);
    const auto& l = lo[p];
    const auto& u = hi[p];
    constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    Lookahead out{kMin, kMin, kMax, kMax};
    for (Mask j = 0; j < top; ++j) {
      out.a = std::max(out.a, l[j | next] - sums[j]);
      out.b = std::max(out.b, l[j | top | next] - sums[j]);
      out.c = std::min(out.c, u[j | next] - sums[j]);
      out.d = std::min(out.d, u[j | top | next] - sums[j]);
    }
    return out;
  };

  std::vector<Mask> hint(np, 0);  // last subset that ruled p out
  auto subtree_inside = [&](std::size_t p, std::size_t k, std::int64_t left) {
    const Mask prefix = full_mask(k);
    const Mask suffix = full & ~prefix;
    const auto& b = partial[p][k];
    auto holds = [&](Mask j) {
      if (b.max_low[j] > sums[j] || b.min_up[j] < sums[j] + left) return false;
      auto whole = sums[j] + left;
      return whole >= lo[p][j | suffix] && whole <= hi[p][j | suffix];
    };
    if (hint[p] <= prefix && !holds(hint[p])) return false;
    for (Mask j = 0; j <= prefix; ++j)
      if (!holds(j)) {
        hint[p] = j;
        return false;
      }
    return true;
  };

  using Window = std::pair<std::int64_t, std::int64_t>;
  std::vector<std::vector<Window>> windows(h, std::vector<Window>(np));
  std::vector<std::vector<Lookahead>> ahead(h, std::vector<Lookahead>(np));
  // windows[k] holds the windows of the live polytopes at a node fixing k.
  auto rec = [&](auto& self, std::size_t k, std::int64_t left, std::uint64_t alive) -> bool {
    ++res.nodes_visited;
    if (dual && k + 1 == h) return true;
    for (std::uint64_t a = alive; a; a &= a - 1)
      if (subtree_inside(static_cast<std::size_t>(std::countr_zero(a)), k, left)) return true;
    const bool last = k + 1 == h;
    const bool descend = !last && !(dual && k + 2 == h);
    const std::int64_t lowest = last ? left : 0;
    const Mask top = bit(k);
    const auto& window = windows[k];
    if (descend)
      for (std::uint64_t a = alive; a; a &= a - 1) {
        const auto p = static_cast<std::size_t>(std::countr_zero(a));
        ahead[k][p] = lookahead(p, k);
      }
    for (std::int64_t x = left; x >= lowest; --x) {
      q[k] = x;
      std::uint64_t next = 0;
      for (std::uint64_t a = alive; a; a &= a - 1) {
        const auto p = static_cast<std::size_t>(std::countr_zero(a));
        if (window[p].first <= x && x <= window[p].second) next |= std::uint64_t{1} << p;
      }
      if (next == 0) {
        auto witness = q;
        for (std::size_t j = k + 1; j < h; ++j) witness[j] = 0;
        if (!last) witness[k + 1] = left - x;
        res.uncovered = witness;
        return false;
      }
      if (last) return true;
      if (!descend) continue;
      for (std::uint64_t a = next; a; a &= a - 1) {
        const auto p = static_cast<std::size_t>(std::countr_zero(a));
        const auto& la = ahead[k][p];
        windows[k + 1][p] = {std::max(la.a, la.b - x), std::min(la.c, la.d - x)};
      }
      for (Mask i = 0; i < top; ++i) sums[i | top] = sums[i] + x;
      if (!self(self, k + 1, left - x, next)) return false;
    }
    return true;
  };
  const std::uint64_t all = np == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << np) - 1;
  for (std::size_t p = 0; p < np; ++p) windows[0][p] = {lo[p][1], hi[p][1]};
  rec(rec, 0, total, all);
  return res;
}

/// Caller-supplied scalings: scalings[{i, j}] = c with c W_i inside W_j.
template <ExactField F>
using ScalingMap = std::map<std::pair<std::size_t, std::size_t>, std::vector<typename F::value_type>>;

inline std::vector<std::int64_t> kDefaultDilations() { return {1, 2, 3}; }

/// Evidence that the polytopes of a collection of subspaces, together with
/// their faces, tile the standard simplex.
template <ExactField F>
Certificate check_collection(const std::vector<Subspace<F>>& ws,
                             const std::vector<std::int64_t>& dilations,
                             const ScalingMap<F>& scalings = {}) {
  if (ws.empty()) throw InputError("collection is empty");
  for (const auto& w : ws) {
    ws.front().require_same_ambient(w);
    if (w.dim() != ws.front().dim()) throw InputError("subspaces of different dimensions");
  }
  for (auto t : dilations)
    if (t < 1) throw InputError("dilations must be positive");
  const auto& field = ws.front().field();
  const auto& labels = ws.front().ambient()->labels();
  const std::size_t h = labels.size();
  const std::size_t count = ws.size();
  const auto range = static_cast<std::int64_t>(ws.front().dim());

  std::vector<ModularPair> pairs;
  for (const auto& w : ws) pairs.push_back(modular_pair_of(w));

  Certificate cert;
  cert.kind = "collection tiling";

  {
    Json bad = Json::array();
    for (std::size_t i = 0; i < count; ++i)
      if (!is_simple(pairs[i].mu)) bad.push_back({{"index", i}, {"codimension", codimension(pairs[i].mu)}});
    cert.add("simplicity", bad.empty(), {{"non_simple", bad}});
  }
  {
    Json dup = Json::array();
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j)
        if (pairs[i] == pairs[j]) dup.push_back({i, j});
    cert.add("nonequivalence", dup.empty(), {{"equal_pairs", dup}});
  }
  {
    Json missing = Json::array(), checked = Json::array();
    Json seps = Json::array();
    bool sep_ok = true;
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) {
        if (i == j) continue;
        auto it = scalings.find({i, j});
        std::optional<Mask> support;
        if (it == scalings.end()) {
          missing.push_back({i, j});
        } else {
          const auto& c = it->second;
          Mask s = 0;
          for (std::size_t v = 0; v < c.size() && v < h; ++v)
            if (!field.is_zero(c[v])) s |= bit(v);
          bool ok = c.size() == h && s != 0 && ws[j].contains(scale(c, ws[i]));
          if (!ok) missing.push_back({{"pair", {i, j}}, {"reason", "c is zero or c W_i not in W_j"}});
          else {
            support = s;
            checked.push_back({{"pair", {i, j}}, {"c", json_vector(field, c)}});
          }
        }
        // Separation for (mu_j, mu_i): at supp(c) when available, otherwise any.
        std::optional<Separation> sep;
        if (support) {
          for (const auto& s : all_separations(pairs[j].mu, pairs[i].mu))
            if (s.i == *support && s.nontrivial) sep = s;
        } else {
          auto s = separation(pairs[j].mu, pairs[i].mu);
          if (s && s->nontrivial) sep = s;
        }
        if (!sep) {
          sep_ok = false;
          seps.push_back({{"pair", {i, j}}, {"separation", nullptr}});
        } else {
          seps.push_back({{"pair", {i, j}},
                          {"I", json_subset(sep->i, labels)},
                          {"J", json_subset(sep->j, labels)},
                          {"strict", sep->strict}});
        }
      }
    cert.add("scalings", missing.empty(), {{"verified", checked}, {"missing_or_invalid", missing}});
    cert.add("separations", sep_ok, {{"pairs", seps}});
  }
  {
    Json witnesses = Json::array();
    bool ok = true;
    for (std::size_t i = 0; i < count; ++i)
      for (Mask a = 1; a < full_mask(h); ++a) {
        auto pi = OrderedPartition::bipartition(a, h);
        if (!face_meets_open_simplex(pairs[i].mu, pi)) continue;
        auto face = split(pairs[i].mu, pi);
        std::optional<std::size_t> partner;
        for (std::size_t j = 0; j < count && !partner; ++j)
          if (j != i && split(pairs[j].mu, pi.complement()) == face) partner = j;
        if (!partner) ok = false;
        Json w = {{"index", i}, {"I", json_subset(a, labels)}};
        w["partner"] = partner ? Json(*partner) : Json(nullptr);
        witnesses.push_back(std::move(w));
      }
    cert.add("completeness", ok, {{"faces", witnesses}});
  }
  for (auto t : dilations) {
    auto cov = simplex_coverage(pairs, range, t);
    Json d = {{"dilation", t}, {"simplex_points", cov.simplex_points},
              {"search_nodes", cov.nodes_visited}};
    if (cov.uncovered) d["uncovered_point"] = *cov.uncovered;
    cert.add("coverage t=" + std::to_string(t), cov.covered(), std::move(d));
  }
  cert.notes["coverage"] = "checked at finitely many dilations";
  return cert;
}

}  // namespace polytile
