#pragma once

// Chip-firing on finite loop-free multigraphs. The complete linear system
// |D| is a convex vertex set of a Z^n-quiver whose arrow types are the graph
// vertices: D' sits at the firing vector x with D' = D - L x, normalised to
// minimum 0.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "polytile/bits.hpp"
#include "polytile/error.hpp"
#include "polytile/quiver.hpp"
#include "polytile/setfn.hpp"

namespace polytile {

inline constexpr std::size_t kMaxGraphVertices = 12;
inline constexpr std::int64_t kMaxDivisorDegree = 12;

using Divisor = std::vector<std::int64_t>;

class Graph {
public:
  Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
      : n_(vertices), edges_(std::move(edges)) {
    if (n_ == 0) throw InputError("graph needs at least one vertex");
    if (n_ > kMaxGraphVertices) throw LimitError("graphs are limited to 12 vertices");
    for (auto [a, b] : edges_) {
      if (a >= n_ || b >= n_) throw InputError("edge endpoint out of range");
      if (a == b) throw InputError("loop edges are not allowed");
    }
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto [a, b] : edges_) parent[find(a)] = find(b);
    for (std::size_t v = 0; v < n_; ++v)
      if (find(v) != find(0)) throw InputError("graph is not connected");
  }

  [[nodiscard]] std::size_t vertices() const { return n_; }
  [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  [[nodiscard]] std::int64_t multiplicity(std::size_t a, std::size_t b) const {
    std::int64_t m = 0;
    for (auto [x, y] : edges_)
      if ((x == a && y == b) || (x == b && y == a)) ++m;
    return m;
  }

  /// L = deg - adjacency; firing v changes D by -L e_v.
  [[nodiscard]] std::vector<std::vector<std::int64_t>> laplacian() const {
    std::vector<std::vector<std::int64_t>> l(n_, std::vector<std::int64_t>(n_, 0));
    for (auto [a, b] : edges_) {
      ++l[a][a];
      ++l[b][b];
      --l[a][b];
      --l[b][a];
    }
    return l;
  }

private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Diagonalisation U A V = S of an integer matrix with unimodular U, V.
struct SmithForm {
  using IntMatrix = std::vector<std::vector<mpz_class>>;
  IntMatrix u, s, v;
  std::size_t rank = 0;

  explicit SmithForm(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a.front().size() : 0;
    s.assign(m, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) s[i][j] = static_cast<long>(a[i][j]);
    u = identity(m);
    v = identity(n);
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!move_smallest_to(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (s[i][t] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), s[i][t].get_mpz_t(), s[t][t].get_mpz_t());
          add_row(i, t, -q);
          if (s[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s[t][j] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), s[t][j].get_mpz_t(), s[t][t].get_mpz_t());
          add_col(j, t, -q);
          if (s[t][j] != 0) clean = false;
        }
        if (clean) break;
        move_smallest_in_cross(t);
      }
      rank = t + 1;
    }
  }

  /// Integer x with A x = b, if one exists.
  [[nodiscard]] std::optional<std::vector<mpz_class>> solve(const std::vector<mpz_class>& b) const {
    const std::size_t m = s.size();
    const std::size_t n = v.size();
    std::vector<mpz_class> c(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) c[i] += u[i][k] * b[k];
    std::vector<mpz_class> y(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i < rank) {
        if (!mpz_divisible_p(c[i].get_mpz_t(), s[i][i].get_mpz_t())) return std::nullopt;
        y[i] = c[i] / s[i][i];
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    std::vector<mpz_class> x(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) x[i] += v[i][k] * y[k];
    return x;
  }

private:
  static IntMatrix identity(std::size_t n) {
    IntMatrix id(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(s[a], s[b]);
    std::swap(u[a], u[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (auto& row : s) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
  }
  // row[i] += q * row[t]
  void add_row(std::size_t i, std::size_t t, const mpz_class& q) {
    for (std::size_t j = 0; j < s[i].size(); ++j) s[i][j] += q * s[t][j];
    for (std::size_t j = 0; j < u[i].size(); ++j) u[i][j] += q * u[t][j];
  }
  // col[j] += q * col[t]
  void add_col(std::size_t j, std::size_t t, const mpz_class& q) {
    for (auto& row : s) row[j] += q * row[t];
    for (auto& row : v) row[j] += q * row[t];
  }

  bool move_smallest_to(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < s.size(); ++i)
      for (std::size_t j = t; j < s[i].size(); ++j)
        if (s[i][j] != 0 && (!best || abs(s[i][j]) < abs(s[best->first][best->second])))
          best = {i, j};
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void move_smallest_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < s.size(); ++i)
      if (s[i][t] != 0 && abs(s[i][t]) < abs(s[bi][bj])) bi = i, bj = t;
    for (std::size_t j = t; j < s[t].size(); ++j)
      if (s[t][j] != 0 && abs(s[t][j]) < abs(s[bi][bj])) bi = t, bj = j;
    swap_rows(t, bi);
    swap_cols(t, bj);
  }
};

inline std::int64_t degree(const Divisor& d) { return std::accumulate(d.begin(), d.end(), std::int64_t{0}); }

/// Firing vector x (normalised to minimum 0) with d2 = d1 - L x, or nullopt
/// when d2 is not linearly equivalent to d1.
inline std::optional<Vertex> firing_vector(const Graph& g, const SmithForm& snf, const Divisor& d1,
                                           const Divisor& d2) {
  std::vector<mpz_class> b(g.vertices());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<long>(d1[i] - d2[i]);
  auto x = snf.solve(b);
  if (!x) return std::nullopt;
  Vertex out;
  for (const auto& e : *x) {
    if (!e.fits_slong_p()) throw LimitError("firing vector out of range");
    out.push_back(e.get_si());
  }
  return normalize(std::move(out));
}

struct LinearSystemMember {
  Divisor divisor;
  Vertex coords;
};

/// The effective divisors equivalent to d, sorted by quiver coordinates.
inline std::vector<LinearSystemMember> linear_system(const Graph& g, const Divisor& d) {
  if (d.size() != g.vertices()) throw InputError("divisor length does not match the graph");
  const auto deg = degree(d);
  if (deg < 0) throw InputError("divisor has negative degree");
  if (deg > kMaxDivisorDegree) throw LimitError("divisor degree is limited to 12");
  SmithForm snf(g.laplacian());
  std::vector<LinearSystemMember> out;
  for_each_composition(g.vertices(), deg, [&](const std::vector<std::int64_t>& e) {
    auto x = firing_vector(g, snf, d, e);
    if (!x) return;
    out.push_back({e, *x});
  });
  std::sort(out.begin(), out.end(),
            [](const LinearSystemMember& a, const LinearSystemMember& b) { return a.coords < b.coords; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].coords == out[i - 1].coords)
      throw ContractViolation("two divisors share quiver coordinates " + vertex_string(out[i].coords));
  return out;
}

inline VertexSet linear_system_vertices(const std::vector<LinearSystemMember>& ls) {
  VertexSet out;
  for (const auto& m : ls) out.push_back(m.coords);
  return out;
}

/// No debt off v, and every nonempty A inside V - v has a vertex that would
/// go into debt if all of A lent one chip along each edge leaving A.
inline bool is_v_reduced(const Graph& g, const Divisor& d, std::size_t v) {
  const std::size_t n = g.vertices();
  if (v >= n) throw InputError("vertex out of range");
  if (d.size() != n) throw InputError("divisor length does not match the graph");
  for (std::size_t u = 0; u < n; ++u)
    if (u != v && d[u] < 0) return false;
  const Mask others = full_mask(n) & ~bit(v);
  for (Mask a = others; a; a = (a - 1) & others) {
    bool debt = false;
    for (auto x : mask_elements(a)) {
      std::int64_t out_edges = 0;
      for (auto [p, q] : g.edges()) {
        if (p == x && !has_bit(a, q)) ++out_edges;
        if (q == x && !has_bit(a, p)) ++out_edges;
      }
      if (d[x] < out_edges) {
        debt = true;
        break;
      }
    }
    if (!debt) return false;
  }
  return true;
}

}  // namespace polytile
