#pragma once

// Integer-valued set functions on 2^H stored densely by bitmask, modular
// pairs (mu, mu*), ordered partitions and splittings, and base-polytope
// queries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polytile/bits.hpp"
#include "polytile/error.hpp"
#include "polytile/field.hpp"
#include "polytile/matrix.hpp"

namespace polytile {

inline constexpr std::size_t kMaxGroundSet = 20;
inline constexpr std::size_t kMaxVertexEnumeration = 8;

class SetFn {
public:
  SetFn() = default;

  SetFn(std::vector<std::string> ground_set, std::vector<std::int64_t> values)
      : ground_(std::move(ground_set)), values_(std::move(values)) {
    if (ground_.size() > kMaxGroundSet)
      throw LimitError("ground set larger than " + std::to_string(kMaxGroundSet));
    if (values_.size() != (std::size_t{1} << ground_.size()))
      throw InputError("set function needs 2^" + std::to_string(ground_.size()) + " values, got " +
                       std::to_string(values_.size()));
    if (values_[0] != 0) throw InputError("set function must vanish on the empty set");
    for (std::size_t i = 0; i < ground_.size(); ++i)
      for (std::size_t j = i + 1; j < ground_.size(); ++j)
        if (ground_[i] == ground_[j]) throw InputError("duplicate ground-set label '" + ground_[i] + "'");
  }

  /// Ground set labelled "0", "1", ...
  static SetFn over(std::size_t h, std::vector<std::int64_t> values) {
    return SetFn(default_labels(h), std::move(values));
  }

  static SetFn tabulate(std::vector<std::string> ground_set,
                        const std::function<std::int64_t(Mask)>& f) {
    std::vector<std::int64_t> values(std::size_t{1} << ground_set.size());
    for (Mask m = 0; m < values.size(); ++m) values[m] = f(m);
    return SetFn(std::move(ground_set), std::move(values));
  }

  static std::vector<std::string> default_labels(std::size_t h) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < h; ++i) out.push_back(std::to_string(i));
    return out;
  }

  [[nodiscard]] std::size_t size() const { return ground_.size(); }
  [[nodiscard]] Mask full() const { return full_mask(size()); }
  [[nodiscard]] const std::vector<std::string>& ground_set() const { return ground_; }
  [[nodiscard]] const std::vector<std::int64_t>& values() const { return values_; }
  [[nodiscard]] std::int64_t operator()(Mask m) const { return values_[m]; }
  [[nodiscard]] std::int64_t range() const { return values_[full()]; }

  friend bool operator==(const SetFn& a, const SetFn& b) {
    return a.ground_ == b.ground_ && a.values_ == b.values_;
  }

private:
  std::vector<std::string> ground_;
  std::vector<std::int64_t> values_;
};

/// Local exchange test: f(I+a) + f(I+b) <= f(I+a+b) + f(I) for all I, a, b
/// outside I.
inline bool is_supermodular(const SetFn& f) {
  const std::size_t h = f.size();
  for (Mask i = 0; i <= f.full(); ++i)
    for (std::size_t a = 0; a < h; ++a) {
      if (has_bit(i, a)) continue;
      for (std::size_t b = a + 1; b < h; ++b) {
        if (has_bit(i, b)) continue;
        if (f(i | bit(a)) + f(i | bit(b)) > f(i | bit(a) | bit(b)) + f(i)) return false;
      }
    }
  return true;
}

inline bool is_submodular(const SetFn& f) {
  auto neg = f.values();
  for (auto& x : neg) x = -x;
  return is_supermodular(SetFn(f.ground_set(), std::move(neg)));
}

inline bool is_nondecreasing(const SetFn& f) {
  for (Mask i = 0; i <= f.full(); ++i)
    for (std::size_t a = 0; a < f.size(); ++a)
      if (!has_bit(i, a) && f(i | bit(a)) < f(i)) return false;
  return true;
}

/// mu*(I) = mu(H) - mu(H - I).
inline SetFn adjoint(const SetFn& mu) {
  const Mask full = mu.full();
  return SetFn::tabulate(mu.ground_set(),
                         [&](Mask i) { return mu(full) - mu(full & ~i); });
}

/// mu_{J2/J1}(I) = mu((I & J2) | J1) - mu(J1).
inline SetFn restrict_contract(const SetFn& mu, Mask j1, Mask j2) {
  if ((j1 & ~j2) != 0) throw InputError("restrict_contract needs J1 to be a subset of J2");
  if ((j2 & ~mu.full()) != 0) throw InputError("subset outside the ground set");
  return SetFn::tabulate(mu.ground_set(), [&](Mask i) { return mu((i & j2) | j1) - mu(j1); });
}

/// Sequence of disjoint subsets covering H. Empty parts are allowed but make
/// the partition trivial.
struct OrderedPartition {
  std::vector<Mask> parts;

  [[nodiscard]] std::vector<Mask> filtration() const {
    std::vector<Mask> f{0};
    for (auto p : parts) f.push_back(f.back() | p);
    return f;
  }

  [[nodiscard]] bool nontrivial() const {
    return std::none_of(parts.begin(), parts.end(), [](Mask p) { return p == 0; });
  }

  [[nodiscard]] std::size_t size() const { return parts.size(); }

  /// Reverses a bipartition (pi_1, pi_2) to (pi_2, pi_1).
  [[nodiscard]] OrderedPartition complement() const {
    if (parts.size() != 2) throw InputError("complement is defined for bipartitions");
    return {{parts[1], parts[0]}};
  }

  void validate(std::size_t h) const {
    Mask seen = 0;
    for (auto p : parts) {
      if (p & seen) throw InputError("ordered partition has overlapping parts");
      seen |= p;
    }
    if (seen != full_mask(h)) throw InputError("ordered partition does not cover the ground set");
  }

  static OrderedPartition bipartition(Mask i, std::size_t h) { return {{i, full_mask(h) & ~i}}; }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
  friend auto operator<=>(const OrderedPartition&, const OrderedPartition&) = default;
};

/// mu_pi = sum_j mu_{F_j / F_{j-1}}.
inline SetFn split(const SetFn& mu, const OrderedPartition& pi) {
  pi.validate(mu.size());
  auto f = pi.filtration();
  return SetFn::tabulate(mu.ground_set(), [&](Mask i) {
    std::int64_t total = 0;
    for (std::size_t j = 1; j < f.size(); ++j) total += mu((i & f[j]) | f[j - 1]) - mu(f[j - 1]);
    return total;
  });
}

/// Whether the face P_{mu_pi} meets the open simplex, read off mu directly:
/// mu_pi*(v) = mu(H) - mu_pi(H - v).
inline bool face_meets_open_simplex(const SetFn& mu, const OrderedPartition& pi) {
  pi.validate(mu.size());
  auto f = pi.filtration();
  const Mask full = mu.full();
  for (std::size_t v = 0; v < mu.size(); ++v) {
    const Mask i = full & ~bit(v);
    std::int64_t value = 0;
    for (std::size_t j = 1; j < f.size(); ++j) value += mu((i & f[j]) | f[j - 1]) - mu(f[j - 1]);
    if (mu(full) - value <= 0) return false;
  }
  return true;
}

/// Atoms of the Boolean algebra of separators {I : mu(I) + mu(I^c) = mu(H)},
/// in order of their least element.
inline std::vector<Mask> separator_atoms(const SetFn& mu) {
  const Mask full = mu.full();
  std::vector<Mask> atom_of(mu.size(), full);
  for (Mask i = 0; i <= full; ++i) {
    if (mu(i) + mu(full & ~i) != mu(full)) continue;
    for (std::size_t x = 0; x < mu.size(); ++x)
      if (has_bit(i, x)) atom_of[x] &= i;
  }
  std::vector<Mask> atoms;
  for (auto a : atom_of)
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  return atoms;
}

/// Largest s such that mu = mu_pi for some s-partition pi.
inline std::size_t codimension(const SetFn& mu) {
  if (!is_supermodular(mu)) throw InputError("codimension requires a supermodular function");
  if (mu.size() == 0) return 0;
  return separator_atoms(mu).size();
}

/// An ordered partition of maximal length splitting mu.
inline OrderedPartition finest_splitting(const SetFn& mu) {
  if (!is_supermodular(mu)) throw InputError("finest_splitting requires a supermodular function");
  return {separator_atoms(mu)};
}

inline bool is_simple(const SetFn& mu) { return codimension(mu) == 1; }

struct ModularPair {
  SetFn mu;
  SetFn mu_star;

  [[nodiscard]] std::int64_t range() const { return mu.range(); }
  [[nodiscard]] std::size_t size() const { return mu.size(); }

  static ModularPair of(const SetFn& mu) {
    if (!is_supermodular(mu)) throw InputError("modular pair requires a supermodular function");
    return {mu, adjoint(mu)};
  }

  friend bool operator==(const ModularPair& a, const ModularPair& b) { return a.mu == b.mu; }
};

struct Separation {
  Mask i = 0;
  Mask j = 0;
  bool strict = false;
  bool nontrivial = false;
};

namespace detail {

inline void require_comparable(const SetFn& mu, const SetFn& nu) {
  if (mu.ground_set() != nu.ground_set()) throw InputError("separation needs a common ground set");
  if (mu.range() != nu.range()) throw InputError("separation needs equal ranges");
}

inline std::optional<Separation> separation_unchecked(const SetFn& mu, const SetFn& nu, Mask i) {
  const Mask j = mu.full() & ~i;
  const auto n = mu.range();
  auto s = mu(i) + nu(j);
  if (s < n) return std::nullopt;
  Separation sep{i, j, s > n, s > n};
  if (!sep.nontrivial) {
    auto pi = OrderedPartition::bipartition(i, mu.size());
    sep.nontrivial = !(split(mu, pi) == mu) || !(split(nu, pi) == nu);
  }
  return sep;
}

}  // namespace detail

/// The bipartition (I, H - I) as a separation of (mu, nu), if it is one.
inline std::optional<Separation> separation_at(const SetFn& mu, const SetFn& nu, Mask i) {
  detail::require_comparable(mu, nu);
  if (i == 0 || i >= mu.full()) throw InputError("separation needs a proper nonempty subset");
  return detail::separation_unchecked(mu, nu, i);
}

/// All proper bipartitions (I, J) with mu(I) + nu(J) >= n, in mask order of I.
inline std::vector<Separation> all_separations(const SetFn& mu, const SetFn& nu) {
  detail::require_comparable(mu, nu);
  std::vector<Separation> out;
  for (Mask i = 1; i < mu.full(); ++i)
    if (auto sep = detail::separation_unchecked(mu, nu, i)) out.push_back(*sep);
  return out;
}

/// A separation for (mu, nu), preferring a nontrivial one.
inline std::optional<Separation> separation(const SetFn& mu, const SetFn& nu) {
  auto all = all_separations(mu, nu);
  if (all.empty()) return std::nullopt;
  for (const auto& s : all)
    if (s.nontrivial) return s;
  return all.front();
}

/// q in P_mu, i.e. mu(I) <= q(I) <= mu*(I) for every I.
template <class T>
bool polytope_membership(const ModularPair& pair, const std::vector<T>& q) {
  const std::size_t h = pair.size();
  if (q.size() != h) throw InputError("point dimension does not match the ground set");
  std::vector<T> sums(std::size_t{1} << h, T(0));
  for (Mask i = 1; i <= pair.mu.full(); ++i) {
    auto low = static_cast<std::size_t>(std::countr_zero(i));
    sums[i] = sums[i & (i - 1)] + q[low];
    if (sums[i] < T(pair.mu(i)) || T(pair.mu_star(i)) < sums[i]) return false;
  }
  return true;
}

/// Greedy vertex of P_mu along the permutation `order`.
inline std::vector<std::int64_t> greedy_vertex(const SetFn& mu, const std::vector<std::size_t>& order) {
  std::vector<std::int64_t> q(mu.size(), 0);
  Mask f = 0;
  for (auto x : order) {
    q[x] = mu(f | bit(x)) - mu(f);
    f |= bit(x);
  }
  return q;
}

inline std::vector<std::vector<std::int64_t>> polytope_vertices(const ModularPair& pair) {
  const std::size_t h = pair.size();
  if (h > kMaxVertexEnumeration)
    throw LimitError("vertex enumeration is limited to ground sets of size " +
                     std::to_string(kMaxVertexEnumeration));
  std::vector<std::size_t> order(h);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<std::int64_t>> found;
  do {
    found.insert(greedy_vertex(pair.mu, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return {found.begin(), found.end()};
}

/// Dimension of the affine hull of a nonempty point set.
inline std::size_t affine_dimension(const std::vector<std::vector<std::int64_t>>& points) {
  if (points.empty()) throw InputError("affine dimension of an empty set");
  RationalField q;
  auto m = MatrixOf<RationalField>::with_cols(points.front().size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> row;
    for (std::size_t k = 0; k < points[i].size(); ++k)
      row.push_back(q.from_int(points[i][k] - points[0][k]));
    m.append_row(row);
  }
  return rank(q, std::move(m));
}

/// P_mu meets the open simplex iff max_{P_mu} q_v = mu*({v}) is positive for
/// every v.
inline bool meets_open_simplex(const ModularPair& pair) {
  for (std::size_t v = 0; v < pair.size(); ++v)
    if (pair.mu_star(bit(v)) <= 0) return false;
  return true;
}

/// A point of P_mu with all coordinates positive (average of the greedy
/// vertices putting each v last), or nullopt if none exists.
inline std::optional<std::vector<Rational>> open_simplex_witness(const ModularPair& pair) {
  if (!meets_open_simplex(pair)) return std::nullopt;
  const std::size_t h = pair.size();
  std::vector<Rational> avg(h, Rational(0));
  for (std::size_t v = 0; v < h; ++v) {
    std::vector<std::size_t> order;
    for (std::size_t x = 0; x < h; ++x)
      if (x != v) order.push_back(x);
    order.push_back(v);
    auto g = greedy_vertex(pair.mu, order);
    for (std::size_t x = 0; x < h; ++x) avg[x] += Rational(static_cast<long>(g[x]));
  }
  for (auto& x : avg) x /= Rational(static_cast<long>(h));
  return avg;
}

/// Calls visit(q) for every composition q of `total` into h nonnegative parts,
/// in lexicographic order with the first coordinate decreasing.
inline void for_each_composition(std::size_t h, std::int64_t total,
                                 const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  if (h == 0) {
    if (total == 0) visit({});
    return;
  }
  std::vector<std::int64_t> q(h, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
    if (k + 1 == h) {
      q[k] = left;
      visit(q);
      return;
    }
    for (std::int64_t x = left; x >= 0; --x) {
      q[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, total);
}

/// Integer points q with q(H) = t mu(H) and t mu(I) <= q(I) <= t mu*(I).
inline std::vector<std::vector<std::int64_t>> lattice_points(const ModularPair& pair,
                                                             std::int64_t t) {
  if (t < 1) throw InputError("dilation must be positive");
  const std::size_t h = pair.size();
  const std::int64_t total = t * pair.range();
  std::vector<std::vector<std::int64_t>> out;
  if (h == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<std::int64_t> q(h, 0);
  std::vector<std::int64_t> sums(std::size_t{1} << h, 0);
  // Coordinates are fixed in index order; once coordinate k is set every
  // subset of {0..k} containing k is fully determined and checked.
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
    auto assign = [&](std::int64_t x) {
      q[k] = x;
      const Mask top = bit(k);
      for (Mask i = 0; i < top; ++i) {
        Mask m = i | top;
        sums[m] = sums[i] + x;
        if (sums[m] < t * pair.mu(m) || sums[m] > t * pair.mu_star(m)) return false;
      }
      return true;
    };
    if (k + 1 == h) {
      if (assign(left)) out.push_back(q);
      return;
    }
    for (std::int64_t x = left; x >= 0; --x)
      if (assign(x)) rec(k + 1, left - x);
  };
  rec(0, total);
  return out;
}

/// Number of compositions of `total` into h parts.
inline std::int64_t composition_count(std::size_t h, std::int64_t total) {
  if (h == 0) return total == 0 ? 1 : 0;
  // binomial(total + h - 1, h - 1)
  std::int64_t k = static_cast<std::int64_t>(h) - 1;
  std::int64_t n = total + k;
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace polytile
