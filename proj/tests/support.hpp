#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "polytile/polytile.hpp"

namespace oracle {

using polytile::Mask;

using QRow = std::vector<mpq_class>;

// Plain Gaussian elimination over Q, kept separate from the library code.
inline std::size_t rank_q(std::vector<QRow> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_p(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  if (rows.empty()) return 0;
  auto md = [p](std::int64_t x) { return ((x % p) + p) % p; };
  auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, b = md(a), e = p - 2;
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % p);
      b = static_cast<std::int64_t>((__int128)b * b % p);
      e >>= 1;
    }
    return r;
  };
  for (auto& row : rows)
    for (auto& x : row) x = md(x);
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    auto iv = inv(rows[r][c]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      auto f = static_cast<std::int64_t>((__int128)rows[i][c] * iv % p);
      for (std::size_t k = c; k < cols; ++k)
        rows[i][k] = md(rows[i][k] - static_cast<std::int64_t>((__int128)f * rows[r][k] % p));
    }
    ++r;
  }
  return r;
}

// Subspace of k^{h*d} given by spanning rows; mu*(I) is the rank of the rows
// restricted to the blocks of I, mu(I) = dim W - mu*(I^c).
struct Table {
  std::vector<std::int64_t> mu, mu_star;
};

inline Table tables_q(const std::vector<QRow>& rows, std::size_t h, std::size_t d) {
  const Mask full = polytile::full_mask(h);
  Table t{std::vector<std::int64_t>(full + 1), std::vector<std::int64_t>(full + 1)};
  for (Mask i = 0; i <= full; ++i) {
    std::vector<QRow> cut;
    for (const auto& row : rows) {
      QRow c;
      for (std::size_t b = 0; b < h; ++b)
        if (i >> b & 1u)
          for (std::size_t k = 0; k < d; ++k) c.push_back(row[b * d + k]);
      cut.push_back(c);
    }
    t.mu_star[i] = i == 0 ? 0 : static_cast<std::int64_t>(rank_q(cut));
  }
  for (Mask i = 0; i <= full; ++i) t.mu[i] = t.mu_star[full] - t.mu_star[full & ~i];
  return t;
}

// W_v of a net over Q: rows (M^v_u e_k)_u for k < d.
inline std::vector<QRow> vertex_rows(const polytile::NetPresentation<polytile::RationalField>& net,
                                     std::size_t v) {
  std::vector<QRow> rows(net.dim, QRow(net.size() * net.dim));
  for (std::size_t u = 0; u < net.size(); ++u)
    for (std::size_t k = 0; k < net.dim; ++k)
      for (std::size_t i = 0; i < net.dim; ++i) rows[k][u * net.dim + i] = net.map(v, u)(i, k);
  return rows;
}

inline bool supermodular_brute(const std::vector<std::int64_t>& f, std::size_t h) {
  const Mask full = polytile::full_mask(h);
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = 0; b <= full; ++b)
      if (f[a] + f[b] > f[a | b] + f[a & b]) return false;
  return true;
}

// All ordered set partitions of {0..h-1}.
inline void ordered_partitions(std::size_t h, const std::function<void(const std::vector<Mask>&)>& fn) {
  std::vector<Mask> parts;
  std::function<void(Mask)> rec = [&](Mask left) {
    if (left == 0) {
      fn(parts);
      return;
    }
    for (Mask s = left; s; s = (s - 1) & left) {
      parts.push_back(s);
      rec(left & ~s);
      parts.pop_back();
    }
  };
  rec(polytile::full_mask(h));
}

inline std::vector<std::int64_t> split_brute(const std::vector<std::int64_t>& mu, const std::vector<Mask>& parts) {
  std::vector<std::int64_t> out(mu.size(), 0);
  for (Mask i = 0; i < mu.size(); ++i) {
    Mask prev = 0;
    for (auto p : parts) {
      Mask cur = prev | p;
      out[i] += mu[(i & cur) | prev] - mu[prev];
      prev = cur;
    }
  }
  return out;
}

// Largest number of parts of an ordered partition splitting mu.
inline std::size_t codimension_brute(const std::vector<std::int64_t>& mu, std::size_t h) {
  std::size_t best = 0;
  ordered_partitions(h, [&](const std::vector<Mask>& parts) {
    if (parts.size() > best && split_brute(mu, parts) == mu) best = parts.size();
  });
  return best;
}

inline std::vector<std::vector<std::int64_t>> integer_points(const std::vector<std::int64_t>& mu,
                                                            const std::vector<std::int64_t>& mu_star,
                                                            std::size_t h, std::int64_t total) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> q(h);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
    if (k + 1 == h) {
      q[k] = left;
      for (Mask i = 0; i < mu.size(); ++i) {
        std::int64_t s = 0;
        for (std::size_t b = 0; b < h; ++b)
          if (i >> b & 1u) s += q[b];
        if (s < mu[i] || s > mu_star[i]) return;
      }
      out.push_back(q);
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      q[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, total);
  return out;
}

// Random spanning rows for a subspace of k^{h*d}, integer entries in [-2, 2]
// with some blocks zeroed.
inline std::vector<std::vector<std::int64_t>> random_rows(std::mt19937_64& rng, std::size_t h, std::size_t d,
                                                         std::size_t k) {
  std::uniform_int_distribution<int> e(-2, 2), coin(0, 3);
  std::vector<std::vector<std::int64_t>> rows(k, std::vector<std::int64_t>(h * d));
  for (auto& row : rows)
    for (auto& x : row) x = e(rng);
  for (std::size_t b = 0; b < h; ++b)
    if (coin(rng) == 0)
      for (auto& row : rows)
        for (std::size_t i = 0; i < d; ++i) row[b * d + i] = 0;
  return rows;
}

}  // namespace oracle

namespace fixtures {

inline polytile::TropicalSpec line3(bool listed_order = true) {
  polytile::TropicalSpec s;
  s.types = 2;
  polytile::TropicalForm a, b;
  a.offsets = {0, 2};
  b.offsets = {0, 0};
  if (listed_order) s.forms = {a, b};
  else s.forms = {b, a};
  return s;
}

inline polytile::TropicalSpec plane5() {
  polytile::TropicalSpec s;
  s.types = 3;
  for (auto o : {std::vector<std::int64_t>{0, 0, 1}, {0, 1, 3}, {1, 0, 2}}) {
    polytile::TropicalForm f;
    for (auto x : o) f.offsets.emplace_back(x);
    s.forms.push_back(f);
  }
  return s;
}

template <polytile::ExactField F>
polytile::MatrixOf<F> mat(const F& field, std::vector<std::vector<std::int64_t>> rows) {
  auto m = polytile::MatrixOf<F>::with_cols(rows.front().size());
  for (const auto& r : rows) {
    std::vector<typename F::value_type> v;
    for (auto x : r) v.push_back(field.from_int(x));
    m.append_row(v);
  }
  return m;
}

}  // namespace fixtures
